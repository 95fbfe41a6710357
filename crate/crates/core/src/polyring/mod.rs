//! Exact sparse polynomial arithmetic.
//!
//! [`MultiPoly`] covers `Q[x1..xn, y1..yn, q]` for Schubert calculus;
//! [`Univariate`] covers Laurent polynomials in one variable, instantiated
//! over the integers ([`LaurentPoly`]) and the rationals ([`QPoly`]).

mod multi;
pub mod parse;
mod scalar;
mod univariate;

pub use multi::{int_const, Bank, Exponents, MultiPoly, Substitution, Var};
pub use scalar::{int_to_rational, rational, Scalar};
pub use univariate::{LaurentPoly, QPoly, Univariate};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("incompatible polynomial shapes: rank {left} vs rank {right}")]
    ShapeMismatch { left: usize, right: usize },
    #[error("no assignment for variable {0}")]
    MissingAssignment(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("evaluation at zero of a polynomial with negative exponents")]
    ZeroEvaluation,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("operation requires a polynomial without negative exponents")]
    NotPolynomial,
    #[error("division leaves a remainder")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}
