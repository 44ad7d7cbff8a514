//! Exact rational arithmetic, polynomials in α and `z`, and the mixed term algebra.

mod mixed;
mod poly;
mod rational;

pub use mixed::{MixedSum, MixedTerm};
pub(crate) use mixed::ln_one_plus_exp;
pub use poly::{AlphaPolynomial, RatPoly, ZPolynomial};
pub use rational::Rational;
