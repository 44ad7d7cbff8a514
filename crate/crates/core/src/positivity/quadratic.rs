use serde::Serialize;

use super::{Certificate, PositivityVerdict};
use crate::exactalg::{RatPoly, Rational};

/// `A z² + B z + C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticCoeffs {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl QuadraticCoeffs {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        QuadraticCoeffs { a, b, c }
    }

    /// `None` if the polynomial has degree above 2.
    pub fn from_poly(p: &RatPoly) -> Option<Self> {
        (p.degree().unwrap_or(0) <= 2).then(|| QuadraticCoeffs::new(p.coeff(2), p.coeff(1), p.coeff(0)))
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        (&self.a * z + &self.b) * z + &self.c
    }
}

/// Three-case criterion for `A z² + B z + C ≥ 0` on `z > 0`:
///
/// 1. `A > 0`, `B < 0`, `B² − 4AC ≤ 0`
/// 2. `A > 0`, `B ≥ 0`, `C ≥ 0`
/// 3. `A = 0`, `B ≥ 0`, `C ≥ 0`
///
/// Every negative verdict carries an exact positive witness.
pub fn quad_nonneg(q: &QuadraticCoeffs) -> PositivityVerdict {
    let zero = Rational::zero();
    let one = Rational::one();
    let two = Rational::from(2);
    let (a, b, c) = (&q.a, &q.b, &q.c);
    let disc = b * b - Rational::from(4) * a * c;

    let witness = if a.is_positive() {
        if b.is_negative() {
            if disc <= zero {
                return PositivityVerdict::nonnegative(Certificate::CriterionCase1);
            }
            // vertex, where P = C − B²/4A < 0
            -b / (&two * a)
        } else if !c.is_negative() {
            return PositivityVerdict::nonnegative(Certificate::CriterionCase2);
        } else {
            // C < 0 ≤ B: P(z) ≤ C + z(A + B) for z ≤ 1
            let z = -c / (&two * &(a + b));
            if z < one { z } else { one }
        }
    } else if a.is_zero() {
        if !b.is_negative() && !c.is_negative() {
            return PositivityVerdict::nonnegative(Certificate::CriterionCase3);
        }
        if b.is_negative() {
            if c.is_positive() { &two * c / (-b) } else { one }
        } else if b.is_zero() {
            one
        } else {
            -c / (&two * b)
        }
    } else {
        // A < 0: beyond the Cauchy bound
        one + (b.abs() + c.abs()) / (-a)
    };
    debug_assert!(q.eval(&witness).is_negative());
    PositivityVerdict::negative(witness)
}
