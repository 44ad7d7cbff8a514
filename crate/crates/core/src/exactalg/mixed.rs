//! Finite sums of `c(α)·t^(p+qβ)·(1+t^β)^(−k)` with `β = 2α` kept symbolic.
//!
//! The set of such sums is closed under `d/dt`, which is what lets the transition
//! functions be built by exact repeated differentiation.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{AlphaPolynomial, RatPoly, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MixedTerm {
    #[serde(serialize_with = "serialize_poly")]
    pub coeff: AlphaPolynomial,
    /// Pure integer power of `t`.
    pub p: i64,
    /// Multiplier of β in the exponent of `t`.
    pub q: i64,
    /// Power of `(1+t^β)` in the denominator.
    pub k: u32,
}

fn serialize_poly<S: serde::Serializer>(
    p: &AlphaPolynomial,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl MixedTerm {
    pub fn new(coeff: AlphaPolynomial, p: i64, q: i64, k: u32) -> Self {
        MixedTerm { coeff, p, q, k }
    }

    fn key(&self) -> (u32, i64, i64) {
        (self.k, self.p, self.q)
    }

    /// Floating value with `β = 2α`. `t` must be positive.
    pub fn eval_f64(&self, alpha: f64, t: f64) -> f64 {
        let c = self.coeff.eval_f64(alpha);
        if c == 0.0 {
            return 0.0;
        }
        let beta = 2.0 * alpha;
        let ln_t = t.ln();
        let exponent = (self.p as f64 + self.q as f64 * beta) * ln_t
            - f64::from(self.k) * ln_one_plus_exp(beta * ln_t);
        c * exponent.exp()
    }

    /// Exact derivative, as up to two new terms.
    pub fn diff(&self) -> [Option<MixedTerm>; 2] {
        // exponent a = p + 2qα
        let a = RatPoly::linear(Rational::from(self.p), Rational::from(2 * self.q));
        let first = Some(MixedTerm::new(&self.coeff * &a, self.p - 1, self.q, self.k));
        let second = (self.k > 0).then(|| {
            let kb = RatPoly::linear(Rational::zero(), Rational::from(-2 * i64::from(self.k)));
            MixedTerm::new(&self.coeff * &kb, self.p - 1, self.q + 1, self.k + 1)
        });
        [first, second]
    }
}

/// `ln(1 + e^x)` without overflow for large `x`.
pub(crate) fn ln_one_plus_exp(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Normalized sum: terms sorted by `(k, p, q)`, keys unique, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct MixedSum {
    terms: Vec<MixedTerm>,
}

impl MixedSum {
    pub fn zero() -> Self {
        MixedSum { terms: Vec::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = MixedTerm>) -> Self {
        let mut merged: BTreeMap<(u32, i64, i64), AlphaPolynomial> = BTreeMap::new();
        for term in terms {
            let slot = merged.entry(term.key()).or_default();
            *slot = &*slot + &term.coeff;
        }
        MixedSum {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((k, p, q), coeff)| MixedTerm { coeff, p, q, k })
                .collect(),
        }
    }

    pub fn single(term: MixedTerm) -> Self {
        Self::from_terms([term])
    }

    pub fn terms(&self) -> &[MixedTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn normalize(&self) -> Self {
        Self::from_terms(self.terms.iter().cloned())
    }

    pub fn add(&self, other: &MixedSum) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &AlphaPolynomial) -> Self {
        Self::from_terms(self.terms.iter().map(|t| MixedTerm {
            coeff: &t.coeff * c,
            ..t.clone()
        }))
    }

    /// Multiply by `t^(p + qβ)`.
    pub fn mul_t_power(&self, p: i64, q: i64) -> Self {
        MixedSum {
            terms: self
                .terms
                .iter()
                .map(|t| MixedTerm {
                    p: t.p + p,
                    q: t.q + q,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Exact `d/dt`.
    pub fn diff(&self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|t| t.diff()).flatten())
    }

    pub fn eval_f64(&self, alpha: f64, t: f64) -> f64 {
        self.terms.iter().map(|term| term.eval_f64(alpha, t)).sum()
    }

    /// Evaluate at exact α and real `t > 0`; a non-finite result is an error.
    pub fn eval(&self, alpha: &Rational, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::domain("t", t, "(0, inf)"));
        }
        let value = self.eval_f64(alpha.to_f64(), t);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite {
                context: format!("mixed sum at alpha = {alpha}, t = {t}"),
            })
        }
    }
}

impl MixedSum {
    /// Evaluate with `z = t^β` rounded once and everything else in exact arithmetic.
    ///
    /// Terms sharing a power `t^p` are combined exactly before rounding, so
    /// cancellation among them costs no digits.
    pub fn eval_exact_z(&self, alpha: &Rational, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::domain("t", t, "(0, inf)"));
        }
        let z = t.powf(2.0 * alpha.to_f64());
        let non_finite = || Error::NonFinite {
            context: format!("t^(2 alpha) at alpha = {alpha}, t = {t}"),
        };
        let zr = Rational::from_f64(z).filter(|z| z.is_positive()).ok_or_else(non_finite)?;
        let inv_one_plus_z = (Rational::one() + zr.clone()).recip()?;
        let mut groups: BTreeMap<i64, Rational> = BTreeMap::new();
        for term in &self.terms {
            let zq = if term.q >= 0 {
                zr.pow(term.q as u32)
            } else {
                zr.recip()?.pow(term.q.unsigned_abs() as u32)
            };
            let value = term.coeff.eval(alpha) * zq * inv_one_plus_z.pow(term.k);
            *groups.entry(term.p).or_default() += &value;
        }
        let value: f64 = groups
            .iter()
            .map(|(&p, c)| c.to_f64() * t.powi(p as i32))
            .sum();
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite {
                context: format!("mixed sum at alpha = {alpha}, t = {t}"),
            })
        }
    }
}

impl fmt::Display for MixedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{}]*t^({}+{}b)*(1+t^b)^-{}", t.coeff, t.p, t.q, t.k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MixedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedSum[{self}]")
    }
}
