//! Transition functions `Φ_n(α, t)` for `φ(t) = ln(1 + t^(−2α))`.
//!
//! Two independent constructions are provided:
//!
//! * the fast path, `Φ_n = (4α²/t) · z · P_n(α, z) / (1 + z)^(n+2)` with `z = t^(2α)` and
//!   `P_n` produced by a first-order recurrence in `n`;
//! * the oracle, `Φ_n = −d/dt[(−t)^(n+1)/n! · φ^(n+1)(t)]` computed by exact repeated
//!   differentiation in the [`MixedSum`] algebra.
//!
//! The two are compared numerically by [`oracle_equiv_check`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{AlphaPolynomial, MixedSum, MixedTerm, RatPoly, Rational, ZPolynomial};

/// `P_0, …, P_max_n` from `P_0 = 1` and
/// `P_n = ((2α+1)z + 1 − 2α/n) P_{n−1} − (2α z (z+1)/n) P'_{n−1}`.
pub fn p_polys(max_n: u32) -> Vec<ZPolynomial> {
    let mut out = Vec::with_capacity(max_n as usize + 1);
    out.push(ZPolynomial::one());
    for n in 1..=max_n {
        let inv_n = Rational::frac(1, i64::from(n));
        let two_alpha_over_n = RatPoly::linear(Rational::zero(), &inv_n * &Rational::from(2));
        let multiplier = ZPolynomial::new(vec![
            RatPoly::linear(Rational::one(), -(&inv_n * &Rational::from(2))),
            RatPoly::from_ints(&[1, 2]),
        ]);
        let derivative_factor = ZPolynomial::new(vec![
            RatPoly::zero(),
            two_alpha_over_n.clone(),
            two_alpha_over_n,
        ]);
        let prev = out.last().expect("P_0 present");
        let next = &(&multiplier * prev) - &(&derivative_factor * &prev.diff_z());
        out.push(next);
    }
    out
}

pub fn p_poly(n: u32) -> ZPolynomial {
    p_polys(n).pop().expect("non-empty")
}

/// Fast evaluator of `Φ_n(α, ·)` at a fixed α.
#[derive(Debug, Clone)]
pub struct TransitionFn {
    n: u32,
    alpha: f64,
    // P_n(α, z) coefficients, padded to length n + 1
    coeffs: Vec<f64>,
}

impl TransitionFn {
    pub fn new(n: u32, alpha: &Rational) -> Result<Self> {
        Self::from_poly(n, alpha, &p_poly(n))
    }

    pub fn from_poly(n: u32, alpha: &Rational, poly: &ZPolynomial) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::domain("alpha", alpha, "alpha > 0"));
        }
        let special = poly.specialize(alpha);
        let mut coeffs: Vec<f64> = special.coeffs().iter().map(Rational::to_f64).collect();
        coeffs.resize(n as usize + 1, 0.0);
        Ok(TransitionFn {
            n,
            alpha: alpha.to_f64(),
            coeffs,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Value at `t > 0`; returns NaN for `t <= 0`.
    pub fn eval(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return f64::NAN;
        }
        if t.is_infinite() {
            return 0.0;
        }
        let a = self.alpha;
        let ln_t = t.ln();
        let ln_z = 2.0 * a * ln_t;
        let k = self.n as i32 + 2;
        if ln_z <= 0.0 {
            let z = ln_z.exp();
            let p = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c);
            4.0 * a * a * ((2.0 * a - 1.0) * ln_t).exp() * p / (1.0 + z).powi(k)
        } else {
            // divide through by z^n so nothing overflows for large t
            let w = (-ln_z).exp();
            let r = self.coeffs.iter().fold(0.0, |acc, c| acc * w + c);
            4.0 * a * a * r * (1.0 + w).powi(-k) * (-(1.0 + 2.0 * a) * ln_t).exp()
        }
    }
}

pub fn transition_eval(n: u32, alpha: &Rational, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("t", t, "(0, inf)"));
    }
    Ok(TransitionFn::new(n, alpha)?.eval(t))
}

/// The simplified first derivative `φ'(t) = −2α t^(−1) (1 + t^(2α))^(−1)`.
pub fn phi_prime_seed() -> MixedSum {
    MixedSum::single(MixedTerm::new(RatPoly::from_ints(&[0, -2]), -1, 0, 1))
}

/// `[φ', φ'', …, φ^(n+1)]` as exact mixed sums.
pub fn phi_symbolic_derivatives(n: u32) -> Vec<MixedSum> {
    derivatives_from_seed(&phi_prime_seed(), n)
}

fn derivatives_from_seed(seed: &MixedSum, n: u32) -> Vec<MixedSum> {
    let mut out = vec![seed.normalize()];
    for _ in 0..n {
        let next = out.last().expect("seed present").diff();
        out.push(next);
    }
    out
}

/// `Φ_n` built from [`phi_prime_seed`] by exact differentiation.
pub fn transition_oracle(n: u32) -> MixedSum {
    transition_oracle_from_seed(&phi_prime_seed(), n)
}

/// `Φ_n = (−1)^n/n! · d/dt[t^(n+1) φ^(n+1)]` for an arbitrary `φ'` given as a mixed sum.
pub fn transition_oracle_from_seed(phi_prime: &MixedSum, n: u32) -> MixedSum {
    let top = derivatives_from_seed(phi_prime, n).pop().expect("non-empty");
    let factorial: Rational = (1..=i64::from(n)).map(Rational::from).product();
    let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    let factor = AlphaPolynomial::constant(sign / factorial);
    top.mul_t_power(i64::from(n) + 1, 0).diff().scale(&factor)
}

/// Both constructions for a fixed α and all indices up to `max_n`.
#[derive(Debug, Clone)]
pub struct PhiFamily {
    pub alpha: Rational,
    pub max_n: u32,
    pub polys: Vec<ZPolynomial>,
    pub oracle_forms: Vec<MixedSum>,
    fast: Vec<TransitionFn>,
}

impl PhiFamily {
    pub fn new(alpha: &Rational, max_n: u32) -> Result<Self> {
        let polys = p_polys(max_n);
        let fast = polys
            .iter()
            .zip(0..)
            .map(|(p, n)| TransitionFn::from_poly(n, alpha, p))
            .collect::<Result<Vec<_>>>()?;
        let oracle_forms = (0..=max_n).map(transition_oracle).collect();
        Ok(PhiFamily {
            alpha: alpha.clone(),
            max_n,
            polys,
            oracle_forms,
            fast,
        })
    }

    pub fn fast(&self, n: u32) -> &TransitionFn {
        &self.fast[n as usize]
    }

    pub fn eval_fast(&self, n: u32, t: f64) -> f64 {
        self.fast[n as usize].eval(t)
    }

    pub fn eval_oracle(&self, n: u32, t: f64) -> f64 {
        self.oracle_forms[n as usize].eval_exact_z(&self.alpha, t).unwrap_or(f64::NAN)
    }
}

pub const EQUIV_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivSample {
    pub n: u32,
    pub alpha: Rational,
    pub t: f64,
    pub fast: f64,
    pub oracle: f64,
    /// `|fast − oracle| / |oracle|`
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivReport {
    pub checked: usize,
    pub max_deviation: f64,
    pub failures: Vec<EquivSample>,
}

impl EquivReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Compare the recurrence path with the oracle on every `(n ≤ max_n, α, t)`.
///
/// A sample passes when `|fast − oracle| ≤ 1e−9 |oracle|`. The oracle is evaluated
/// with [`MixedSum::eval_exact_z`], since its terms cancel heavily near `t = 0`.
pub fn oracle_equiv_check(max_n: u32, alphas: &[Rational], ts: &[f64]) -> Result<EquivReport> {
    if alphas.is_empty() || ts.is_empty() {
        return Err(Error::domain("samples", "empty", "non-empty grids"));
    }
    if let Some(t) = ts.iter().find(|t| !(**t > 0.0)) {
        return Err(Error::domain("t", t, "(0, inf)"));
    }
    let mut alphas: Vec<Rational> = alphas.to_vec();
    alphas.sort();
    let mut ts = ts.to_vec();
    ts.sort_by(f64::total_cmp);
    let oracles: Vec<MixedSum> = (0..=max_n).map(transition_oracle).collect();
    let polys = p_polys(max_n);
    let mut report = EquivReport {
        checked: 0,
        max_deviation: 0.0,
        failures: Vec::new(),
    };
    for (n, poly) in (0..).zip(&polys) {
        for alpha in &alphas {
            let fast_fn = TransitionFn::from_poly(n, alpha, poly)?;
            for &t in &ts {
                let fast = fast_fn.eval(t);
                let oracle = oracles[n as usize].eval_exact_z(alpha, t)?;
                let deviation = (fast - oracle).abs() / oracle.abs().max(f64::MIN_POSITIVE);
                report.checked += 1;
                if deviation.is_nan() || deviation > report.max_deviation {
                    report.max_deviation = deviation;
                }
                if !(deviation <= EQUIV_TOL) {
                    report.failures.push(EquivSample {
                        n,
                        alpha: alpha.clone(),
                        t,
                        fast,
                        oracle,
                        deviation,
                    });
                }
            }
        }
    }
    Ok(report)
}

const LARGE_T: [f64; 3] = [1e3, 1e6, 1e9];
const SMALL_T: [f64; 3] = [1e-3, 1e-6, 1e-9];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub n: u32,
    pub alpha: Rational,
    pub omega: Rational,
    /// `(t, t^(1+2α)|Φ_n(t)|)` for large `t`.
    pub large_t: Vec<(f64, f64)>,
    /// `(t, t^(1+ω)|Φ_n(t)|)` for small `t`.
    pub small_t: Vec<(f64, f64)>,
    pub large_t_bounded: bool,
    pub small_t_vanishing: bool,
}

impl AsymptoticReport {
    pub fn passed(&self) -> bool {
        self.large_t_bounded && self.small_t_vanishing
    }
}

/// Sample the decay of `Φ_n` at both ends of the half-line.
///
/// The scaled large-`t` values must be finite with shrinking successive differences
/// (they settle to a limit); the scaled small-`t` values must decrease toward 0.
pub fn asymptotic_check(n: u32, alpha: &Rational, omega: &Rational) -> Result<AsymptoticReport> {
    if !omega.is_positive() {
        return Err(Error::domain("omega", omega, "omega > 0"));
    }
    let phi = TransitionFn::new(n, alpha)?;
    let a = alpha.to_f64();
    let w = omega.to_f64();
    let large_t: Vec<(f64, f64)> = LARGE_T
        .iter()
        .map(|&t| (t, t.powf(1.0 + 2.0 * a) * phi.eval(t).abs()))
        .collect();
    let small_t: Vec<(f64, f64)> = SMALL_T
        .iter()
        .map(|&t| (t, t.powf(1.0 + w) * phi.eval(t).abs()))
        .collect();
    let large_t_bounded = large_t.iter().all(|(_, v)| v.is_finite())
        && (large_t[2].1 - large_t[1].1).abs() <= (large_t[1].1 - large_t[0].1).abs();
    let small_t_vanishing = small_t.iter().all(|(_, v)| v.is_finite())
        && small_t.windows(2).all(|w| w[1].1 <= w[0].1)
        && (small_t[2].1 < small_t[0].1 || small_t[2].1 == 0.0);
    Ok(AsymptoticReport {
        n,
        alpha: alpha.clone(),
        omega: omega.clone(),
        large_t,
        small_t,
        large_t_bounded,
        small_t_vanishing,
    })
}
