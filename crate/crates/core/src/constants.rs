//! Beta-product constants at integer second argument, computed exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::quadrature::DensityFunction;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaProduct {
    pub alpha: Rational,
    pub n: u32,
    pub value: Rational,
}

/// Right-hand side of the logarithmic-moment bound, stored as `pi_coefficient · π`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhsConstant {
    pub alpha: Rational,
    pub n: u32,
    pub pi_coefficient: Rational,
}

impl RhsConstant {
    pub fn value(&self) -> f64 {
        self.pi_coefficient.to_f64() * std::f64::consts::PI
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InalphaMode {
    /// `B(α, n) / α`
    Product,
    /// `1/α² − Σ_{m=1}^{n−1} B(α, m+1)/m`
    Sum,
}

fn check_args(alpha: &Rational, n: u32) -> Result<()> {
    if !alpha.is_positive() {
        return Err(Error::domain("alpha", alpha, "alpha > 0"));
    }
    if n == 0 {
        return Err(Error::domain("n", n, "n >= 1"));
    }
    Ok(())
}

/// `B(α, n) = (1/α) Π_{k=1}^{n−1} k/(k+α)`.
pub fn beta_int(alpha: &Rational, n: u32) -> Result<Rational> {
    check_args(alpha, n)?;
    let mut value = alpha.recip()?;
    for k in 1..n {
        let k = Rational::from(i64::from(k));
        value = value * &k / (&k + alpha);
    }
    Ok(value)
}

impl BetaProduct {
    pub fn new(alpha: &Rational, n: u32) -> Result<Self> {
        Ok(BetaProduct {
            alpha: alpha.clone(),
            n,
            value: beta_int(alpha, n)?,
        })
    }
}

/// `α Π_{k=1}^{n−1} (1 + α/k)`, the rational factor in front of π.
pub fn rhs_constant(alpha: &Rational, n: u32) -> Result<RhsConstant> {
    check_args(alpha, n)?;
    let mut c = alpha.clone();
    for k in 1..n {
        c = c * (Rational::one() + alpha / &Rational::from(i64::from(k)));
    }
    Ok(RhsConstant {
        alpha: alpha.clone(),
        n,
        pi_coefficient: c,
    })
}

/// The normalization `I_{nα} = ∫_0^1 A_{n−1}(x) x^(α−1) dx` of the extremal density.
pub fn i_nalpha(alpha: &Rational, n: u32, mode: InalphaMode) -> Result<Rational> {
    check_args(alpha, n)?;
    match mode {
        InalphaMode::Product => Ok(beta_int(alpha, n)? / alpha.clone()),
        InalphaMode::Sum => Ok(sum_mode_prefix(alpha, n)?.pop().expect("n >= 1")),
    }
}

// `1/α² − Σ_{m<n} B(α,m+1)/m` for every n in 1..=n_max, with B built up incrementally.
fn sum_mode_prefix(alpha: &Rational, n_max: u32) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(n_max as usize);
    let mut value = (alpha * alpha).recip()?;
    let mut beta = alpha.recip()?;
    out.push(value.clone());
    for m in 1..n_max {
        let k = Rational::from(i64::from(m));
        beta = beta * &k / (&k + alpha);
        value -= &(&beta / &k);
        out.push(value.clone());
    }
    Ok(out)
}

/// For each `n` in `1..=n_max`, whether `B(α,n)/α = 1/α² − Σ_{m<n} B(α,m+1)/m` holds exactly.
pub fn beta_sum_identity(alpha: &Rational, n_max: u32) -> Result<Vec<bool>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let sums = sum_mode_prefix(alpha, n_max)?;
    (1..=n_max)
        .zip(sums)
        .map(|(n, sum)| Ok(i_nalpha(alpha, n, InalphaMode::Product)? == sum))
        .collect()
}

/// The extremal density `q(t) = α t^(α−1) / B(α, n)`.
pub fn extremal_q(alpha: &Rational, n: u32, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("t", t, "(0, inf)"));
    }
    let scale = (alpha / &beta_int(alpha, n)?).to_f64();
    let a = alpha.to_f64();
    Ok(scale * t.powf(a - 1.0))
}

/// [`extremal_q`] packaged as a density with its power-law hints.
pub fn extremal_density(alpha: &Rational, n: u32) -> Result<DensityFunction> {
    let scale = (alpha / &beta_int(alpha, n)?).to_f64();
    let a = alpha.to_f64();
    Ok(DensityFunction::new(
        format!("extremal q, alpha = {alpha}, n = {n}"),
        move |t| scale * t.powf(a - 1.0),
    )
    .with_powers(a - 1.0, a - 1.0))
}
