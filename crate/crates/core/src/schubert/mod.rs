//! Schubert calculus in `Z[x1..xn]/J`, the Chow ring of the flag variety
//! of `GL_n`.
//!
//! The normal form modulo `J` uses the relations `h_{n-i+1}(x_1..x_i) ≡ 0`,
//! whose standard monomials are `x^a` with `a_i <= n-i`; a normal form is
//! then expanded in Schubert polynomials by repeatedly peeling off the
//! lex-smallest monomial `x^{code(w)}` of `S_w`.

mod cache;
pub mod kernel;
mod ops;
mod vector;

pub use cache::{CacheLoad, FlagRing};
pub use ops::{
    coefficient_by_divided_difference, divided_difference, divided_difference_along, divided_difference_word,
    double_schubert_w0, expand_in_schubert_basis, omega_y, reduce_mod_j, schubert_poly, schubert_poly_in, set_y_to_x,
    staircase, vector_to_poly,
};
pub use vector::{render_combination, Basis, SchubertVector};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchubertError {
    #[error("rank {0} outside the supported range 1..=8")]
    RankOutOfRange(usize),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("simple index {index} out of range for S_{n}")]
    InvalidIndex { index: usize, n: usize },
    #[error("polynomial involves y or q where an x-polynomial is required")]
    NotInXBank,
    #[error("exponent exceeds the packed kernel range")]
    DegreeTooLarge,
    #[error("coefficient exceeds 128 bits")]
    CoefficientOverflow,
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
}
