//! Verification toolkit for a family of kernel integral inequalities.
//!
//! - [`exactalg`]: rationals, polynomials in `α` and `z`, and the symbolic algebra of
//!   terms `c(α) t^(p+qβ) (1+t^β)^(−k)` with `β = 2α`.
//! - [`kernel`]: the truncated-log kernel `A_n(x)`.
//! - [`constants`]: Beta products and the right-hand-side constants.
//! - [`transition`]: the transition functions `Φ_n` and their polynomial numerators.
//! - [`positivity`]: exact non-negativity of `P_n(α, z)` on `z > 0` and `α` thresholds.
//! - [`quadrature`]: adaptive quadrature for the integral identities.

pub mod constants;
pub mod error;
pub mod exactalg;
pub mod kernel;
pub mod positivity;
pub mod quadrature;
pub mod transition;

pub use error::{Error, Result};
pub use exactalg::{AlphaPolynomial, MixedSum, MixedTerm, RatPoly, Rational, ZPolynomial};
