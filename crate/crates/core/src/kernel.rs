//! The kernels `A_n(x) = ∫_x^1 (1−y)^n dy/y` on `(0, 1]`.

use crate::error::{Error, Result};

/// Above this point the closed form loses digits to cancellation and the tail
/// series `Σ_{m>n} (1−x)^m/m` is used instead.
pub const X_SWITCH: f64 = 0.9;

pub const DEFAULT_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelQuery {
    pub n: u32,
    pub x: f64,
    pub tol: f64,
}

impl KernelQuery {
    pub fn new(n: u32, x: f64) -> Result<Self> {
        Self::with_tol(n, x, DEFAULT_TOL)
    }

    pub fn with_tol(n: u32, x: f64, tol: f64) -> Result<Self> {
        check_x(x)?;
        if !(tol > 0.0) {
            return Err(Error::domain("tol", tol, "(0, inf)"));
        }
        Ok(KernelQuery { n, x, tol })
    }

    pub fn eval(&self) -> f64 {
        eval_unchecked(self.n, self.x, self.tol)
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain("x", x, "(0, 1]"))
    }
}

pub fn kernel_eval(q: &KernelQuery) -> f64 {
    q.eval()
}

/// `A_n(x)` with the default tolerance.
pub fn kernel(n: u32, x: f64) -> Result<f64> {
    Ok(KernelQuery::new(n, x)?.eval())
}

pub(crate) fn eval_unchecked(n: u32, x: f64, tol: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    let r = 1.0 - x;
    if x <= X_SWITCH {
        let mut partial = 0.0;
        let mut rm = 1.0;
        for m in 1..=n {
            rm *= r;
            partial += rm / f64::from(m);
        }
        return -x.ln() - partial;
    }
    // tail series; remainder after term M is below r^(M+1) / ((M+1) x)
    let mut rm = r.powi(n as i32);
    let mut sum = 0.0;
    let mut m = n;
    loop {
        m += 1;
        rm *= r;
        sum += rm / f64::from(m);
        let bound = rm * r / (f64::from(m + 1) * x);
        if bound < tol || rm == 0.0 {
            break;
        }
    }
    sum
}

/// `A_n'(x) = −(1−x)^n / x`.
pub fn kernel_derivative(n: u32, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(-(1.0 - x).powi(n as i32) / x)
}

/// `A_n(x) − A_{n−1}(x) + (1−x)^n/n`, which vanishes identically.
pub fn kernel_recurrence_residual(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("n", n, "n >= 1"));
    }
    check_x(x)?;
    let a_n = eval_unchecked(n, x, DEFAULT_TOL);
    let a_prev = eval_unchecked(n - 1, x, DEFAULT_TOL);
    Ok(a_n - a_prev + (1.0 - x).powi(n as i32) / f64::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn closed_form_examples() {
        assert!((kernel(0, 0.5).unwrap() - LN_2).abs() < 1e-15);
        assert!((kernel(1, 0.5).unwrap() - (LN_2 - 0.5)).abs() < 1e-15);
        for n in [0, 1, 7, 40] {
            assert_eq!(kernel(n, 1.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn series_branch_matches_high_precision_value() {
        // A_1(0.95) = -ln(0.95) - 0.05, ln(0.95) from a 30-digit reference
        let ln_095 = -0.051_293_294_387_550_533_426_196_144_4_f64;
        let expected = -ln_095 - 0.05;
        let got = kernel(1, 0.95).unwrap();
        assert!((got - expected).abs() < DEFAULT_TOL, "{got} vs {expected}");
        let fine = KernelQuery::with_tol(1, 0.95, 1e-19).unwrap().eval();
        assert!((fine - expected).abs() < 1e-17, "{fine} vs {expected}");
    }

    #[test]
    fn rejects_points_outside_unit_interval() {
        for x in [0.0, -0.5, 1.0 + 1e-12, f64::NAN] {
            assert!(kernel(2, x).is_err());
            assert!(kernel_derivative(2, x).is_err());
        }
        assert!(KernelQuery::with_tol(1, 0.5, 0.0).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(kernel_derivative(0, 1.0).unwrap(), -1.0);
        assert_eq!(kernel_derivative(0, 0.5).unwrap(), -2.0);
        assert_eq!(kernel_derivative(2, 0.5).unwrap(), -0.5);
        assert_eq!(kernel_derivative(3, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn recurrence_residuals_vanish() {
        assert!(kernel_recurrence_residual(1, 0.5).unwrap().abs() < 1e-12);
        assert!(kernel_recurrence_residual(5, 0.99).unwrap().abs() < 2.0 * DEFAULT_TOL);
        assert_eq!(kernel_recurrence_residual(3, 1.0).unwrap(), 0.0);
        assert!(kernel_recurrence_residual(0, 0.5).is_err());
    }

    #[test]
    fn branches_agree_at_switch() {
        for n in 0..6 {
            let below = eval_unchecked(n, X_SWITCH, DEFAULT_TOL);
            let series = {
                let r: f64 = 1.0 - X_SWITCH;
                (n + 1..200).map(|m| r.powi(m as i32) / f64::from(m)).sum::<f64>()
            };
            assert!((below - series).abs() < 1e-14, "n = {n}");
        }
    }
}
