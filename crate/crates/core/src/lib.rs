//! Chow-group classes of Deligne–Lusztig varieties `X(w)` and of their
//! analogues `Y_{w,s}` (regular semisimple) and `Y_{w,u}` (regular unipotent)
//! for `GL_n`, expressed in the Schubert basis of the flag variety.
//!
//! Layers, bottom-up:
//!
//! - [`polyring`]: exact sparse polynomials (multivariate over Q, Laurent over Z).
//! - [`permgroup`]: the symmetric group `S_n` as a Coxeter group.
//! - [`schubert`]: Schubert polynomials, divided differences and the
//!   Schubert-basis expansion of `Z[x]/J`, with a persistent structure-constant cache.
//! - [`hecke`]: the Iwahori–Hecke algebra in the `T` basis.
//! - [`dlclass`]: the class computations themselves.

pub mod dlclass;
pub mod hecke;
pub mod permgroup;
pub mod polyring;
pub mod schubert;
