use ineqverify_core::constants::{beta_int, beta_sum_identity, extremal_q, i_nalpha, rhs_constant, InalphaMode};
use ineqverify_core::exactalg::Rational;
use ineqverify_core::quadrature::{integrate_unit_graded, QuadConfig};
use proptest::prelude::*;

fn alpha() -> impl Strategy<Value = Rational> {
    (1i64..=997).prop_flat_map(|d| (1i64..=3 * d).prop_map(move |n| Rational::frac(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn inalpha_modes_agree(alpha in alpha()) {
        for n in 1..=20 {
            prop_assert_eq!(
                i_nalpha(&alpha, n, InalphaMode::Product).unwrap(),
                i_nalpha(&alpha, n, InalphaMode::Sum).unwrap()
            );
        }
        prop_assert!(beta_sum_identity(&alpha, 20).unwrap().into_iter().all(|ok| ok));
    }

    #[test]
    fn reciprocity_is_exact(alpha in alpha(), n in 1u32..=25) {
        let product = rhs_constant(&alpha, n).unwrap().pi_coefficient * beta_int(&alpha, n).unwrap();
        prop_assert_eq!(product, Rational::one());
    }

    #[test]
    fn beta_recurrence_is_exact(alpha in alpha(), n in 1u32..=25) {
        let k = Rational::from(i64::from(n));
        let next = beta_int(&alpha, n).unwrap() * k.clone() / (k + alpha.clone());
        prop_assert_eq!(beta_int(&alpha, n + 1).unwrap(), next);
    }
}

#[test]
fn beta_integral_matches_product() {
    let cfg = QuadConfig::default();
    for alpha in [Rational::frac(1, 4), Rational::frac(1, 2), Rational::one(), Rational::frac(3, 2)] {
        let a = alpha.to_f64();
        for n in 1..=6u32 {
            let res = integrate_unit_graded(|x| x.powf(a - 1.0) * (1.0 - x).powi(n as i32 - 1), a, &cfg);
            let exact = beta_int(&alpha, n).unwrap().to_f64();
            assert!(res.converged);
            assert!((res.value - exact).abs() <= 1e-8, "alpha = {alpha}, n = {n}: {} vs {exact}", res.value);
        }
    }
}

#[test]
fn extremal_density_examples() {
    // α = 1/2, n = 1: q(t) = (1/2) t^(−1/2) / 2
    let q = extremal_q(&Rational::frac(1, 2), 1, 4.0).unwrap();
    assert!((q - 0.125).abs() < 1e-16);
    assert!(extremal_q(&Rational::frac(1, 2), 1, 0.0).is_err());
    assert!(beta_int(&Rational::zero(), 3).is_err());
    assert!(rhs_constant(&Rational::one(), 0).is_err());
}

#[test]
fn rhs_examples() {
    assert_eq!(rhs_constant(&Rational::frac(1, 2), 2).unwrap().pi_coefficient, Rational::frac(3, 4));
    assert_eq!(rhs_constant(&Rational::one(), 1).unwrap().pi_coefficient, Rational::one());
    assert_eq!(rhs_constant(&Rational::one(), 4).unwrap().pi_coefficient, Rational::from(4));
}
