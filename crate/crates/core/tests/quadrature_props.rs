use std::f64::consts::PI;

use ineqverify_core::constants::{beta_int, extremal_density};
use ineqverify_core::exactalg::Rational;
use ineqverify_core::quadrature::{
    default_t_grid, integrate_half_line, integrate_log_moment, integrate_phi_prime_moment, integrate_unit_graded,
    transition_transform, verify_kernel_reproduction, verify_power_moment, verify_reduction_chain, ChainTolerances,
    DensityFunction, QuadConfig, QuadResult,
};
use ineqverify_core::transition::p_poly;

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn assert_within_stated_tolerance(res: &QuadResult, cfg: &QuadConfig) {
    assert!(res.converged, "{res:?}");
    assert!(res.error_estimate <= cfg.abs_tol.max(cfg.rel_tol * res.value.abs()));
}

#[test]
fn log_moment_values() {
    let cfg = QuadConfig::default();
    for (alpha, target) in [(r(1, 1), PI), (r(1, 2), 2.0 * PI), (r(2, 1), PI / 2.0), (r(1, 4), 4.0 * PI)] {
        let res = integrate_log_moment(&alpha, &cfg).unwrap();
        assert_within_stated_tolerance(&res, &cfg);
        assert!((res.value - target).abs() <= 1e-8, "alpha = {alpha}: {}", res.value);
    }
}

#[test]
fn phi_prime_moment_values() {
    let cfg = QuadConfig::default();
    for alpha in [r(1, 2), r(1, 1), r(1, 5), r(3, 1)] {
        let res = integrate_phi_prime_moment(&alpha, &cfg).unwrap();
        assert_within_stated_tolerance(&res, &cfg);
        assert!((res.value + PI).abs() <= 1e-8, "alpha = {alpha}: {}", res.value);
    }
}

// (quadrature, exact value) on the closed-form suite
fn closed_form_suite(cfg: &QuadConfig) -> Vec<(QuadResult, f64)> {
    let mut out = Vec::new();
    for alpha in [r(1, 4), r(1, 2), r(1, 1), r(2, 1)] {
        out.push((integrate_log_moment(&alpha, cfg).unwrap(), PI / alpha.to_f64()));
    }
    for alpha in [r(1, 2), r(1, 1)] {
        out.push((integrate_phi_prime_moment(&alpha, cfg).unwrap(), -PI));
    }
    for alpha in [r(1, 4), r(1, 2), r(3, 2)] {
        let a = alpha.to_f64();
        for n in [1, 3, 6] {
            let res = integrate_unit_graded(|x| x.powf(a - 1.0) * (1.0 - x).powi(n - 1), a, cfg);
            out.push((res, beta_int(&alpha, n as u32).unwrap().to_f64()));
        }
    }
    out
}

#[test]
fn halving_tolerances_never_increases_achieved_error() {
    // The bisection order does not depend on the tolerances, so a tighter run refines
    // the looser run's mesh and its error estimate cannot be larger.
    let mut cfg = QuadConfig {
        abs_tol: 1e-4,
        rel_tol: 1e-4,
        ..QuadConfig::default()
    };
    let mut previous = closed_form_suite(&cfg);
    for _ in 0..20 {
        cfg.abs_tol /= 2.0;
        cfg.rel_tol /= 2.0;
        let current = closed_form_suite(&cfg);
        for (i, ((p, _), (c, exact))) in previous.iter().zip(&current).enumerate() {
            assert!(c.converged, "case {i} at abs_tol {:e}", cfg.abs_tol);
            assert!(c.error_estimate <= p.error_estimate, "case {i}: {c:?} after {p:?}");
            assert!(c.subdivisions_used >= p.subdivisions_used);
            let tol = cfg.abs_tol.max(cfg.rel_tol * exact.abs());
            assert!((c.value - exact).abs() <= tol, "case {i}: error {:e} above {tol:e}", (c.value - exact).abs());
        }
        previous = current;
    }
}

#[test]
fn kernel_reproduction_examples() {
    let cfg = QuadConfig::default();
    let check = verify_kernel_reproduction(0, &r(1, 2), 1.0, &cfg).unwrap();
    assert!((check.target - std::f64::consts::LN_2).abs() < 1e-15);
    assert!(check.passes(1e-6));
    let check = verify_kernel_reproduction(3, &r(1, 4), 2.0, &cfg).unwrap();
    assert!((check.target - (1.0 + 2f64.powf(-0.5)).ln()).abs() < 1e-15);
    assert!(check.passes(1e-6));
    for (n, alpha) in [(0, r(1, 2)), (2, r(1, 4)), (4, r(1, 2))] {
        let check = verify_kernel_reproduction(n, &alpha, 1e3, &cfg).unwrap();
        let decay = 1e3f64.powf(-2.0 * alpha.to_f64());
        assert!((check.target - decay).abs() <= decay * decay);
        assert!(check.residual.abs() <= 1e-6 * decay, "{check:?}");
    }
    assert!(verify_kernel_reproduction(1, &r(1, 2), 0.0, &cfg).is_err());
}

#[test]
fn kernel_reproduction_grid() {
    let cfg = QuadConfig::default();
    for n in 0..=4 {
        for alpha in [r(1, 4), r(1, 2)] {
            for y in [0.5, 1.0, 2.0] {
                let check = verify_kernel_reproduction(n, &alpha, y, &cfg).unwrap();
                assert!(check.passes(1e-6), "n = {n}, alpha = {alpha}, y = {y}: {check:?}");
            }
        }
    }
}

#[test]
fn power_moment_examples() {
    let cfg = QuadConfig::default();
    // ∫ √t/(1+t)² = π/2 and ∫ 2 t^(3/2)/(1+t)³ = 3π/4
    for (n, alpha, target) in [(0, r(1, 2), PI / 2.0), (1, r(1, 2), 0.75 * PI), (0, r(1, 1), PI)] {
        let check = verify_power_moment(n, &alpha, &cfg).unwrap();
        assert!((check.target - target).abs() < 1e-14);
        assert!(check.passes(1e-6), "{check:?}");
    }
    let oracle = integrate_half_line(|t: f64| t.sqrt() / (1.0 + t).powi(2), 1.5, 0.5, &cfg);
    assert!((oracle.value - PI / 2.0).abs() < 1e-8);
}

#[test]
fn power_moment_grid() {
    let cfg = QuadConfig::default();
    for n in 0..=4 {
        for alpha in [r(1, 4), r(1, 2), r(1, 1)] {
            let check = verify_power_moment(n, &alpha, &cfg).unwrap();
            assert!(check.passes(1e-6), "n = {n}, alpha = {alpha}: {check:?}");
        }
    }
}

#[test]
fn transform_of_power_reproduces_moment() {
    let cfg = QuadConfig::default();
    for (n, alpha) in [(1, r(1, 2)), (3, r(1, 4)), (5, r(1, 1))] {
        let a = alpha.to_f64();
        let psi = DensityFunction::power(a);
        let transform = transition_transform(n, &alpha, &psi, &cfg).unwrap();
        let moment = verify_power_moment(n - 1, &alpha, &cfg).unwrap();
        assert!((transform.value - moment.quadrature.value).abs() < 1e-9);
    }
    assert!(transition_transform(0, &r(1, 2), &DensityFunction::zero(), &cfg).is_err());
}

#[test]
fn cutoff_transform_loses_the_predicted_tail() {
    // ψ(t) = t^α / (1 + (t/T)^m). For t ≫ 1, Φ_{n−1}(t) t^α ≈ 4α² L t^(−1−α) with L the
    // leading coefficient of P_{n−1}(α, ·), so the missing mass is
    // 4α² L T^(−α) ∫_0^∞ u^(m−1−α)/(1+u^m) du = 4α² L T^(−α) π / (m sin(πα/m)).
    let cfg = QuadConfig::default();
    let (big_t, m) = (1e6, 40.0);
    for (n, alpha, rel_tol) in [(3u32, r(1, 2), 1e-3), (3, r(1, 4), 2e-2), (1, r(1, 2), 1e-3)] {
        let a = alpha.to_f64();
        let psi = DensityFunction::new("cutoff power", move |t: f64| t.powf(a) / (1.0 + (t / big_t).powf(m)))
            .with_powers(a, a)
            .with_breakpoints([0.9 * big_t, big_t, 1.1 * big_t]);
        let cut = transition_transform(n, &alpha, &psi, &cfg).unwrap();
        let full = verify_power_moment(n - 1, &alpha, &cfg).unwrap();
        assert!(cut.converged && full.quadrature.converged);
        let lead = p_poly(n - 1).specialize(&alpha).leading().unwrap().to_f64();
        let predicted = 4.0 * a * a * lead * big_t.powf(-a) * PI / (m * (PI * a / m).sin());
        let missing = full.target - cut.value;
        assert!(
            ((missing - predicted) / predicted).abs() <= rel_tol,
            "n = {n}, alpha = {alpha}: missing {missing:e}, predicted {predicted:e}"
        );
    }
}

#[test]
fn extremal_density_gives_equality() {
    let cfg = QuadConfig::default();
    let tol = ChainTolerances::default();
    let alpha = r(1, 2);
    let q = extremal_density(&alpha, 2).unwrap();
    let report = verify_reduction_chain(2, &alpha, &q, &default_t_grid(), &cfg, &tol).unwrap();
    assert!(report.applicable && report.premise_satisfied);
    assert_eq!(report.premise.len(), 25);
    for entry in &report.premise {
        assert!((entry.lhs - entry.bound).abs() <= 1e-6 * entry.bound.max(1.0), "{entry:?}");
    }
    assert_eq!(report.rhs_pi_coefficient, r(3, 4));
    let lhs = report.conclusion_lhs.as_ref().unwrap().value;
    assert!((lhs - 0.75 * PI).abs() <= 1e-6);
    assert_eq!(report.equality_within_tol, Some(true));
    assert_eq!(report.conclusion_satisfied, Some(true));
}

#[test]
fn chain_consistency_for_extremal_densities() {
    let cfg = QuadConfig::default();
    let tol = ChainTolerances::default();
    for n in 1..=3 {
        for alpha in [r(1, 4), r(1, 2)] {
            let q = extremal_density(&alpha, n).unwrap();
            let report = verify_reduction_chain(n, &alpha, &q, &default_t_grid(), &cfg, &tol).unwrap();
            let lhs = report.conclusion_lhs.as_ref().unwrap().value;
            assert!((lhs - report.rhs).abs() <= 1e-5 * report.rhs, "n = {n}, alpha = {alpha}");
        }
    }
}

#[test]
fn zero_density_satisfies_the_chain() {
    let cfg = QuadConfig::default();
    let report = verify_reduction_chain(
        3,
        &r(1, 4),
        &DensityFunction::zero(),
        &default_t_grid(),
        &cfg,
        &ChainTolerances::default(),
    )
    .unwrap();
    assert!(report.premise_satisfied);
    assert_eq!(report.conclusion_lhs.as_ref().unwrap().value, 0.0);
    assert_eq!(report.conclusion_satisfied, Some(true));
    assert_eq!(report.equality_within_tol, Some(false));
}

#[test]
fn doubled_extremal_density_breaks_the_premise() {
    let cfg = QuadConfig::default();
    let alpha = r(1, 2);
    let q = extremal_density(&alpha, 2).unwrap().scaled(2.0);
    let report =
        verify_reduction_chain(2, &alpha, &q, &default_t_grid(), &cfg, &ChainTolerances::default()).unwrap();
    assert!(!report.premise_satisfied);
    assert!(report.premise.iter().all(|e| e.residual > 0.0 && (e.lhs / e.bound - 2.0).abs() < 1e-8));
    assert!(report.conclusion_lhs.is_none());
    assert_eq!(report.conclusion_satisfied, None);
}

#[test]
fn chain_is_not_applicable_above_one_half() {
    let cfg = QuadConfig::default();
    let alpha = r(3, 4);
    let q = extremal_density(&alpha, 2).unwrap();
    let report =
        verify_reduction_chain(2, &alpha, &q, &default_t_grid(), &cfg, &ChainTolerances::default()).unwrap();
    assert!(!report.applicable);
    assert!(report.positivity.witness.is_some());
    assert!(report.conclusion_lhs.is_none());
}
