//! Numerical certification of the integral identities.
//!
//! Endpoint singularities are removed by substitution before the adaptive engine
//! runs. A power-law integrand `f(t) ~ t^(a−1)` at 0 becomes regular under
//! `t = u^(1/a)`, and a tail `f(t) ~ t^(−1−b)` becomes regular under `t = v^(−1/b)`.
//! What is left is at most logarithmic, which the graded panel at
//! [`QuadConfig::singularity_split`] and bisection absorb.

mod engine;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use engine::integrate;

use crate::constants::rhs_constant;
use crate::error::{Error, Result};
use crate::exactalg::{ln_one_plus_exp, Rational};
use crate::kernel::{self, DEFAULT_TOL};
use crate::positivity::{poly_nonneg_on_pos, PositivityVerdict};
use crate::transition::{p_poly, TransitionFn};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Width of the first panel at a singular endpoint.
    pub singularity_split: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
            singularity_split: 1e-3,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::domain("abs_tol", self.abs_tol, "(0, inf)"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::domain("rel_tol", self.rel_tol, "(0, inf)"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions", 0, "positive"));
        }
        if !(self.singularity_split > 0.0 && self.singularity_split < 1.0) {
            return Err(Error::domain("singularity_split", self.singularity_split, "(0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
    pub subdivisions_used: usize,
    pub diagnostic: Option<String>,
}

impl QuadResult {
    fn not_integrable(reason: String) -> Self {
        QuadResult {
            value: f64::NAN,
            error_estimate: f64::INFINITY,
            converged: false,
            subdivisions_used: 0,
            diagnostic: Some(reason),
        }
    }
}

/// A non-negative function on `(0, ∞)` with power-law hints for the substitutions:
/// `q(t) = O(t^power_at_zero)` as `t → 0` and `q(t) = O(t^power_at_infinity)` as `t → ∞`.
///
/// Features much narrower than their distance to 0 (steep cutoffs, kinks) should be
/// announced as breakpoints so that the initial mesh resolves them.
#[derive(Clone)]
pub struct DensityFunction {
    evaluator: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub description: String,
    pub power_at_zero: f64,
    pub power_at_infinity: f64,
    pub breakpoints: Vec<f64>,
}

impl DensityFunction {
    pub fn new(description: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        DensityFunction {
            evaluator: Arc::new(f),
            description: description.into(),
            power_at_zero: 0.0,
            power_at_infinity: 0.0,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_powers(mut self, at_zero: f64, at_infinity: f64) -> Self {
        self.power_at_zero = at_zero;
        self.power_at_infinity = at_infinity;
        self
    }

    /// Points of `(0, ∞)` where the density changes abruptly; others are ignored.
    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints = points.into_iter().filter(|t| *t > 0.0 && t.is_finite()).collect();
        self.breakpoints.sort_by(f64::total_cmp);
        self.breakpoints.dedup();
        self
    }

    pub fn zero() -> Self {
        DensityFunction::new("zero", |_| 0.0).with_powers(0.0, -2.0)
    }

    /// `t^p` for real `p`.
    pub fn power(p: f64) -> Self {
        DensityFunction::new(format!("t^{p}"), move |t| t.powf(p)).with_powers(p, p)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let inner = Arc::clone(&self.evaluator);
        DensityFunction {
            evaluator: Arc::new(move |t| c * inner(t)),
            description: format!("{c} * ({})", self.description),
            ..self.clone()
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.evaluator)(t)
    }
}

impl fmt::Debug for DensityFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityFunction")
            .field("description", &self.description)
            .field("power_at_zero", &self.power_at_zero)
            .field("power_at_infinity", &self.power_at_infinity)
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

fn mesh(mut points: Vec<f64>) -> Vec<f64> {
    points.retain(|p| p.is_finite());
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// `∫_0^1 f(x) dx` through `x = u^(1/a)`, for `f(x) ~ x^(a−1)` near 0.
pub fn integrate_unit_graded<F: Fn(f64) -> f64>(f: F, a: f64, cfg: &QuadConfig) -> QuadResult {
    integrate_unit_graded_with(f, a, &[], cfg)
}

/// [`integrate_unit_graded`] with extra mesh points `x ∈ (0, 1)`.
pub fn integrate_unit_graded_with<F: Fn(f64) -> f64>(f: F, a: f64, points: &[f64], cfg: &QuadConfig) -> QuadResult {
    if !(a > 0.0) {
        return QuadResult::not_integrable(format!("endpoint exponent {a} is not integrable at 0"));
    }
    let inv = 1.0 / a;
    let g = |u: f64| {
        let x = u.powf(inv);
        let jac = inv * u.powf(inv - 1.0);
        if x == 0.0 || !jac.is_finite() {
            return 0.0;
        }
        f(x) * jac
    };
    let mut u = vec![0.0, cfg.singularity_split, 1.0];
    u.extend(points.iter().filter(|x| **x > 0.0 && **x < 1.0).map(|x| x.powf(a)));
    integrate(g, &mesh(u), cfg)
}

/// `∫_0^∞ f(t) dt` for `f(t) ~ t^(a−1)` at 0 and `f(t) ~ t^(−1−b)` at ∞.
///
/// `(0, 1]` is mapped by `t = u^(1/a)` and `[1, ∞)` by `t = v^(−1/b)`; both pieces
/// run in a single adaptive pass over `u ∈ (0, 2)`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> QuadResult {
    integrate_half_line_with(f, a, b, &[], cfg)
}

/// [`integrate_half_line`] with extra mesh points `t ∈ (0, ∞)`.
pub fn integrate_half_line_with<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    points: &[f64],
    cfg: &QuadConfig,
) -> QuadResult {
    if !(a > 0.0) {
        return QuadResult::not_integrable(format!("exponent {a} at 0 is not integrable"));
    }
    if !(b > 0.0) {
        return QuadResult::not_integrable(format!("decay exponent {b} at infinity is not integrable"));
    }
    let (ia, ib) = (1.0 / a, 1.0 / b);
    let g = |u: f64| {
        let (t, jac) = if u <= 1.0 {
            (u.powf(ia), ia * u.powf(ia - 1.0))
        } else {
            let v = 2.0 - u;
            (v.powf(-ib), ib * v.powf(-ib - 1.0))
        };
        if t == 0.0 || !t.is_finite() || !jac.is_finite() {
            return 0.0;
        }
        f(t) * jac
    };
    let s = cfg.singularity_split;
    let mut u = vec![0.0, s, 1.0, 2.0 - s, 2.0];
    u.extend(points.iter().filter(|t| **t > 0.0 && t.is_finite()).map(|&t| {
        if t <= 1.0 {
            t.powf(a)
        } else {
            2.0 - t.powf(-b)
        }
    }));
    integrate(g, &mesh(u), cfg)
}

/// `∫_0^1 A_{n−1}(x) q(t x) dx`, the premise integral at scale `t`.
pub fn integrate_01_kernel(n: u32, q: &DensityFunction, t: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    if n == 0 {
        return Err(Error::domain("n", n, "n >= 1"));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("t", t, "(0, inf)"));
    }
    let f = |x: f64| kernel::eval_unchecked(n - 1, x, DEFAULT_TOL) * q.eval(t * x);
    let points: Vec<f64> = q.breakpoints.iter().map(|b| b / t).collect();
    Ok(integrate_unit_graded_with(f, 1.0 + q.power_at_zero, &points, cfg))
}

fn check_alpha(alpha: &Rational) -> Result<f64> {
    if !alpha.is_positive() {
        return Err(Error::domain("alpha", alpha, "alpha > 0"));
    }
    Ok(alpha.to_f64())
}

/// `ln(1 + t^(−2α))`
pub fn phi(alpha: f64, t: f64) -> f64 {
    ln_one_plus_exp(-2.0 * alpha * t.ln())
}

/// `∫_0^∞ t^(α−1) ln(1 + t^(−2α)) dt`, equal to `π/α`.
pub fn integrate_log_moment(alpha: &Rational, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    let a = check_alpha(alpha)?;
    let f = |t: f64| ((a - 1.0) * t.ln()).exp() * phi(a, t);
    Ok(integrate_half_line(f, a, a, cfg))
}

/// `∫_0^∞ t^α φ'(t) dt` with `φ'(t) = −2α / (t (1 + t^(2α)))`, equal to `−π`.
pub fn integrate_phi_prime_moment(alpha: &Rational, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    let a = check_alpha(alpha)?;
    let f = |t: f64| {
        let ln_t = t.ln();
        -2.0 * a * ((a - 1.0) * ln_t).exp() / (1.0 + (2.0 * a * ln_t).exp())
    };
    Ok(integrate_half_line(f, a, a, cfg))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub quadrature: QuadResult,
    pub target: f64,
    /// quadrature value minus target
    pub residual: f64,
}

impl IdentityCheck {
    fn new(quadrature: QuadResult, target: f64) -> Self {
        let residual = quadrature.value - target;
        IdentityCheck {
            quadrature,
            target,
            residual,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.quadrature.converged && self.residual.abs() <= tol
    }
}

/// `∫_y^∞ Φ_n(t) A_n(y/t) dt` against `φ(y)`.
///
/// With `t = y/u` the integral becomes `∫_0^1 Φ_n(y/u) A_n(u) y/u² du`.
pub fn verify_kernel_reproduction(n: u32, alpha: &Rational, y: f64, cfg: &QuadConfig) -> Result<IdentityCheck> {
    cfg.validate()?;
    let a = check_alpha(alpha)?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain("y", y, "(0, inf)"));
    }
    let transition = TransitionFn::new(n, alpha)?;
    let f = |u: f64| transition.eval(y / u) * kernel::eval_unchecked(n, u, DEFAULT_TOL) * y / (u * u);
    let quad = integrate_unit_graded(f, 2.0 * a, cfg);
    Ok(IdentityCheck::new(quad, phi(a, y)))
}

/// `∫_0^∞ Φ_n(t) t^α dt` against `π α Π_{k=1}^{n} (1 + α/k) = π / B(α, n+1)`.
pub fn verify_power_moment(n: u32, alpha: &Rational, cfg: &QuadConfig) -> Result<IdentityCheck> {
    cfg.validate()?;
    let a = check_alpha(alpha)?;
    let transition = TransitionFn::new(n, alpha)?;
    let f = |t: f64| transition.eval(t) * t.powf(a);
    let quad = integrate_half_line(f, 3.0 * a, a, cfg);
    let target = PI * rhs_constant(alpha, n + 1)?.pi_coefficient.to_f64();
    Ok(IdentityCheck::new(quad, target))
}

/// `ψ ↦ ∫_0^∞ Φ_{n−1}(t) ψ(t) dt`.
pub fn transition_transform(n: u32, alpha: &Rational, psi: &DensityFunction, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    let a = check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::domain("n", n, "n >= 1"));
    }
    let transition = TransitionFn::new(n - 1, alpha)?;
    let f = |t: f64| transition.eval(t) * psi.eval(t);
    Ok(integrate_half_line_with(
        f,
        2.0 * a + psi.power_at_zero,
        2.0 * a - psi.power_at_infinity,
        &psi.breakpoints,
        cfg,
    ))
}

/// `∫_0^∞ q(t) ln(1 + t^(−2α)) dt`.
pub fn integrate_log_weighted(alpha: &Rational, q: &DensityFunction, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    let a = check_alpha(alpha)?;
    let f = |t: f64| q.eval(t) * phi(a, t);
    Ok(integrate_half_line_with(
        f,
        1.0 + q.power_at_zero,
        2.0 * a - 1.0 - q.power_at_infinity,
        &q.breakpoints,
        cfg,
    ))
}

/// 25 log-spaced points in `[1e−3, 1e3]`.
pub fn default_t_grid() -> Vec<f64> {
    log_grid(1e-3, 1e3, 25)
}

pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (l0, l1) = (lo.ln(), hi.ln());
            (0..points)
                .map(|i| (l0 + (l1 - l0) * i as f64 / (points - 1) as f64).exp())
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainTolerances {
    /// Allowed excess of the premise integral over `t^α`.
    pub premise: f64,
    /// Relative slack for comparing the conclusion with its right-hand side.
    pub conclusion_rel: f64,
}

impl Default for ChainTolerances {
    fn default() -> Self {
        ChainTolerances {
            premise: 1e-6,
            conclusion_rel: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PremiseEntry {
    pub t: f64,
    /// `∫_0^t A_{n−1}(y/t) q(y) dy`
    pub lhs: f64,
    /// `t^α`
    pub bound: f64,
    /// `max(0, lhs − bound)`
    pub residual: f64,
    pub quadrature: QuadResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub n: u32,
    pub alpha: Rational,
    pub density: String,
    /// Verdict for `P_{n−1}(α, ·)`; the chain applies only when it is non-negative.
    pub positivity: PositivityVerdict,
    pub applicable: bool,
    pub premise: Vec<PremiseEntry>,
    pub max_premise_residual: f64,
    pub premise_satisfied: bool,
    pub conclusion_lhs: Option<QuadResult>,
    pub rhs_pi_coefficient: Rational,
    pub rhs: f64,
    pub conclusion_satisfied: Option<bool>,
    pub equality_within_tol: Option<bool>,
    pub tolerances: ChainTolerances,
}

/// Run the premise → conclusion chain for one density on a sampled `t` grid.
///
/// The premise `∫_0^t A_{n−1}(y/t) q(y) dy ≤ t^α` is checked at each grid point. The
/// conclusion `∫_0^∞ q(t) ln(1 + t^(−2α)) dt ≤ π α Π_{k<n}(1 + α/k)` is only judged
/// when `Φ_{n−1}(α, ·)` is certified non-negative and the premise held.
pub fn verify_reduction_chain(
    n: u32,
    alpha: &Rational,
    q: &DensityFunction,
    t_grid: &[f64],
    cfg: &QuadConfig,
    tol: &ChainTolerances,
) -> Result<ChainReport> {
    cfg.validate()?;
    let a = check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::domain("n", n, "n >= 1"));
    }
    let positivity = poly_nonneg_on_pos(&p_poly(n - 1), alpha);
    let applicable = positivity.is_nonnegative();
    let rhs_const = rhs_constant(alpha, n)?;

    let mut t_grid = t_grid.to_vec();
    t_grid.sort_by(f64::total_cmp);
    let mut premise = Vec::with_capacity(t_grid.len());
    for &t in &t_grid {
        let quad = integrate_01_kernel(n, q, t, cfg)?;
        let lhs = t * quad.value;
        let bound = t.powf(a);
        premise.push(PremiseEntry {
            t,
            lhs,
            bound,
            residual: (lhs - bound).max(0.0),
            quadrature: quad,
        });
    }
    let max_premise_residual = premise
        .iter()
        .map(|p| if p.residual.is_nan() { f64::INFINITY } else { p.residual })
        .fold(0.0, f64::max);
    let premise_satisfied = premise.iter().all(|p| p.quadrature.converged) && max_premise_residual <= tol.premise;

    let rhs = rhs_const.value();
    let (conclusion_lhs, conclusion_satisfied, equality_within_tol) = if applicable && premise_satisfied {
        let lhs = integrate_log_weighted(alpha, q, cfg)?;
        let ok = lhs.converged;
        let satisfied = ok && lhs.value <= rhs * (1.0 + tol.conclusion_rel);
        let equal = ok && (lhs.value - rhs).abs() <= tol.conclusion_rel * rhs;
        (Some(lhs), Some(satisfied), Some(equal))
    } else {
        (None, None, None)
    };

    Ok(ChainReport {
        n,
        alpha: alpha.clone(),
        density: q.description.clone(),
        positivity,
        applicable,
        premise,
        max_premise_residual,
        premise_satisfied,
        conclusion_lhs,
        rhs_pi_coefficient: rhs_const.pi_coefficient,
        rhs,
        conclusion_satisfied,
        equality_within_tol,
        tolerances: *tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::extremal_density;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn premise_integral_examples() {
        let cfg = QuadConfig::default();
        let q = extremal_density(&r(1, 2), 1).unwrap();
        let res = integrate_01_kernel(1, &q, 1.0, &cfg).unwrap();
        assert!(res.converged);
        assert!((res.value - 1.0).abs() < 1e-8, "{res:?}");
        let q = extremal_density(&r(1, 2), 2).unwrap();
        let res = integrate_01_kernel(2, &q, 4.0, &cfg).unwrap();
        assert!((res.value - 0.5).abs() < 1e-8, "{res:?}");
        let res = integrate_01_kernel(3, &DensityFunction::zero(), 2.0, &cfg).unwrap();
        assert_eq!(res.value, 0.0);
        assert!(integrate_01_kernel(0, &DensityFunction::zero(), 2.0, &cfg).is_err());
        assert!(integrate_01_kernel(1, &DensityFunction::zero(), -2.0, &cfg).is_err());
    }

    #[test]
    fn arctan_substitution_value() {
        // −2 ∫_0^∞ dz / (1 + z²)
        let cfg = QuadConfig::default();
        let res = integrate_half_line(|z| -2.0 / (1.0 + z * z), 1.0, 1.0, &cfg);
        assert!((res.value + PI).abs() < 1e-10);
    }

    #[test]
    fn grid_is_log_spaced() {
        let g = default_t_grid();
        assert_eq!(g.len(), 25);
        assert!((g[0] - 1e-3).abs() < 1e-18);
        assert!((g[24] - 1e3).abs() < 1e-9);
        assert!((g[12] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = QuadConfig {
            abs_tol: 0.0,
            ..QuadConfig::default()
        };
        assert!(integrate_log_moment(&r(1, 2), &cfg).is_err());
        assert!(integrate_log_moment(&r(0, 1), &QuadConfig::default()).is_err());
    }

    #[test]
    fn non_integrable_hints_are_flagged() {
        let cfg = QuadConfig::default();
        let res = transition_transform(1, &r(1, 4), &DensityFunction::power(1.0), &cfg).unwrap();
        assert!(!res.converged);
        assert!(res.diagnostic.is_some());
    }

    #[test]
    fn transform_of_zero_is_zero() {
        let res = transition_transform(3, &r(1, 2), &DensityFunction::zero(), &QuadConfig::default()).unwrap();
        assert_eq!(res.value, 0.0);
        assert!(res.converged);
    }
}
