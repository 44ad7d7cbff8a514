//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ineqverify_core::constants::{beta_int, beta_sum_identity, extremal_density, rhs_constant};
use ineqverify_core::exactalg::{AlphaPolynomial, MixedSum, MixedTerm, RatPoly, Rational, ZPolynomial};
use ineqverify_core::positivity::{alpha_threshold, poly_nonneg_on_pos, Status};
use ineqverify_core::quadrature::{
    default_t_grid, integrate_log_moment, integrate_phi_prime_moment, log_grid, verify_kernel_reproduction,
    verify_power_moment, verify_reduction_chain, ChainTolerances, QuadConfig,
};
use ineqverify_core::transition::{p_poly, p_polys, transition_oracle, TransitionFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn alpha_poly(coeffs: &[Rational]) -> AlphaPolynomial {
    RatPoly::new(coeffs.to_vec())
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn exact_polynomials() -> Outcome {
    // (2α+1) z + (1 − 2α)
    let p1 = ZPolynomial::new(vec![alpha_poly(&[r(1, 1), r(-2, 1)]), alpha_poly(&[r(1, 1), r(2, 1)])]);
    // (α+1)(1+2α) z² − 2(2α−1)(1+2α) z + (2α−1)(α−1)
    let p2 = ZPolynomial::new(vec![
        &RatPoly::from_ints(&[-1, 2]) * &RatPoly::from_ints(&[-1, 1]),
        (&RatPoly::from_ints(&[-1, 2]) * &RatPoly::from_ints(&[1, 2])).scale(&r(-2, 1)),
        &RatPoly::from_ints(&[1, 1]) * &RatPoly::from_ints(&[1, 2]),
    ]);
    let got = p_polys(2);
    let pass = got[1] == p1 && got[2] == p2;
    outcome(pass, format!("P_1 = {}, P_2 = {}", got[1], got[2]))
}

fn oracle_equivalence() -> Outcome {
    let ts = log_grid(1e-2, 1e2, 20);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 0..=8u32 {
        let oracle = transition_oracle(n);
        for alpha in [r(1, 4), r(1, 2), r(3, 4)] {
            let fast = TransitionFn::new(n, &alpha).unwrap();
            for &t in &ts {
                let o = oracle.eval_exact_z(&alpha, t).unwrap();
                let f = fast.eval(t);
                let rel = (f - o).abs() / o.abs().max(f64::MIN_POSITIVE);
                worst = if rel.is_nan() { f64::INFINITY } else { worst.max(rel) };
                count += 1;
            }
        }
    }
    outcome(worst <= 1e-9, format!("{count} samples, max relative error {worst:.3e}"))
}

fn exact_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut alphas = Vec::new();
    while alphas.len() < 50 {
        let d: i64 = rng.gen_range(1..=997);
        let n: i64 = rng.gen_range(1..=3 * d);
        alphas.push(r(n, d));
    }
    let mut failures = 0;
    for alpha in &alphas {
        failures += beta_sum_identity(alpha, 20).unwrap().iter().filter(|ok| !**ok).count();
        // (1/α) Π_{k<n} k/(k+α) = 1/α − Σ_{m<n} (1/m) Π_{k≤m} k/(k+α)
        let mut prefix = vec![Rational::one()];
        for k in 1..=20 {
            let next = prefix[k - 1].clone() * r(k as i64, 1) / (r(k as i64, 1) + alpha.clone());
            prefix.push(next);
        }
        for n in 1..=20u32 {
            let lhs = prefix[n as usize - 1].clone() / alpha.clone();
            let rhs = alpha.recip().unwrap()
                - (1..n as usize).map(|m| prefix[m].clone() / r(m as i64, 1)).sum::<Rational>();
            let recip = rhs_constant(alpha, n).unwrap().pi_coefficient * beta_int(alpha, n).unwrap();
            if lhs != rhs || lhs != beta_int(alpha, n).unwrap() || recip != Rational::one() {
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0,
        format!("50 alphas x n <= 20, {failures} exact mismatches"),
    )
}

fn closed_form_integrals() -> Outcome {
    let cfg = QuadConfig::default();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for alpha in [r(1, 4), r(1, 2), r(1, 1), r(2, 1)] {
        let res = integrate_log_moment(&alpha, &cfg).unwrap();
        let err = (res.value - PI / alpha.to_f64()).abs();
        ok &= res.converged && err <= 1e-8;
        worst = worst.max(err);
    }
    for alpha in [r(1, 2), r(1, 1)] {
        let res = integrate_phi_prime_moment(&alpha, &cfg).unwrap();
        let err = (res.value + PI).abs();
        ok &= res.converged && err <= 1e-8;
        worst = worst.max(err);
    }
    outcome(ok, format!("max abs error {worst:.3e}"))
}

fn kernel_reproduction() -> Outcome {
    let cfg = QuadConfig::default();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for n in 0..=4 {
        for alpha in [r(1, 4), r(1, 2)] {
            for y in [0.5, 1.0, 2.0] {
                let check = verify_kernel_reproduction(n, &alpha, y, &cfg).unwrap();
                ok &= check.passes(1e-6);
                worst = worst.max(check.residual.abs());
            }
        }
    }
    outcome(ok, format!("30 cases, max |residual| {worst:.3e}"))
}

fn power_moment() -> Outcome {
    let cfg = QuadConfig::default();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for n in 0..=4 {
        for alpha in [r(1, 4), r(1, 2), r(1, 1)] {
            let check = verify_power_moment(n, &alpha, &cfg).unwrap();
            // independent target: π / B(α, n+1)
            let target = PI / beta_int(&alpha, n + 1).unwrap().to_f64();
            let residual = check.quadrature.value - target;
            ok &= check.quadrature.converged && residual.abs() <= 1e-6;
            worst = worst.max(residual.abs());
        }
    }
    outcome(ok, format!("15 cases, max |residual| {worst:.3e}"))
}

fn equality_case() -> Outcome {
    let cfg = QuadConfig::default();
    let tol = ChainTolerances::default();
    let grid = default_t_grid();
    let mut ok = true;
    let mut worst_premise: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    for n in 1..=3 {
        for alpha in [r(1, 4), r(1, 2)] {
            let q = extremal_density(&alpha, n).unwrap();
            let report = verify_reduction_chain(n, &alpha, &q, &grid, &cfg, &tol).unwrap();
            let target = PI / beta_int(&alpha, n).unwrap().to_f64();
            let lhs = report.conclusion_lhs.as_ref().map_or(f64::NAN, |q| q.value);
            let rel = (lhs - target).abs() / target;
            ok &= report.applicable && report.premise_satisfied && report.max_premise_residual <= 1e-6 && rel <= 1e-5;
            worst_premise = worst_premise.max(report.max_premise_residual);
            worst_rel = if rel.is_nan() { f64::INFINITY } else { worst_rel.max(rel) };
        }
    }
    outcome(
        ok,
        format!("max premise residual {worst_premise:.3e}, max conclusion rel. error {worst_rel:.3e}"),
    )
}

fn positivity_region() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for alpha in [r(1, 10), r(1, 4), r(1, 2)] {
        for n in 0..=8 {
            let v = poly_nonneg_on_pos(&p_poly(n), &alpha);
            if v.status != Status::Nonnegative {
                ok = false;
                notes.push(format!("P_{n} at {alpha}: {:?}", v.status));
            }
        }
    }
    for alpha in [r(51, 100), r(3, 4)] {
        for n in 1..=8 {
            let p = p_poly(n);
            let v = poly_nonneg_on_pos(&p, &alpha);
            let valid = match &v.witness {
                Some(w) => v.status == Status::Negative && w.is_positive() && p.eval(&alpha, w).is_negative(),
                None => false,
            };
            if !valid {
                ok = false;
                notes.push(format!("P_{n} at {alpha}: {:?}", v.status));
            }
        }
    }
    let half = r(1, 2);
    let mut widest: f64 = 0.0;
    for n in 1..=5 {
        let iv = alpha_threshold(n, 1e-6);
        widest = widest.max(iv.width().to_f64());
        if !iv.contains(&half) || iv.width().to_f64() > 1e-6 {
            ok = false;
            notes.push(format!("threshold P_{n}: [{}, {}]", iv.lo, iv.hi));
        }
    }
    let mut detail = format!("72 verdicts, 5 thresholds, widest interval {widest:.3e}");
    if !notes.is_empty() {
        detail.push_str(&format!("; {}", notes.join(", ")));
    }
    outcome(ok, detail)
}

fn repeated_derivative_discrepancy() -> Outcome {
    // Φ_0 = 4α² t^(2α−1) (1 + t^(2α))^(−2); the n-fold form (−1)^n/n! dⁿΦ_0/dtⁿ at n = 1
    let phi0 = MixedSum::single(MixedTerm::new(RatPoly::from_ints(&[0, 0, 4]), -1, 1, 2));
    let repeated = phi0.diff().scale(&RatPoly::from_ints(&[-1]));
    let (alpha, t) = (r(1, 2), 2.0);
    let direct = TransitionFn::new(1, &alpha).unwrap().eval(t);
    let other = repeated.eval(&alpha, t).unwrap();
    let mismatch = (direct - other).abs();
    let pass = mismatch > 1e-2 && ((direct / other) - t).abs() < 1e-12;
    outcome(
        pass,
        format!("Φ_1(2) = {direct:.6} (4/27) vs repeated-derivative form {other:.6} (2/27), ratio {:.3}", direct / other),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("exact polynomial reproduction", Duration::from_secs(1), exact_polynomials),
        ("oracle equivalence", Duration::from_secs(10), oracle_equivalence),
        ("exact identity suite", Duration::from_secs(5), exact_identities),
        ("closed-form integrals", Duration::from_secs(10), closed_form_integrals),
        ("kernel reproduction identity", Duration::from_secs(60), kernel_reproduction),
        ("power moment identity", Duration::from_secs(60), power_moment),
        ("equality case of the chain", Duration::from_secs(120), equality_case),
        ("positivity region", Duration::from_secs(30), positivity_region),
        ("documented discrepancy", Duration::from_secs(1), repeated_derivative_discrepancy),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} [{}] {:.2}s (budget {}s) : {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
