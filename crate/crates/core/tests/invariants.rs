//! Property tests for structural identities of the series engine.

use hankel_core::{
    coefficient, hankel_series, hankel_series_barred, hankel_series_h0_form, rel_diff, ExpansionRequest,
    GrowthKind, SeriesOptions, TaylorSeed,
};
use proptest::prelude::*;

fn h(order: i32, seed: &TaylorSeed, q: f64) -> f64 {
    hankel_series(&ExpansionRequest::new(order, seed.clone(), q)).unwrap().value
}

fn exp_seed() -> impl Strategy<Value = TaylorSeed> {
    prop_oneof![
        (0.3f64..4.0).prop_map(|a| TaylorSeed::exp_decay(a).unwrap()),
        (0u32..4, 0.5f64..3.0).prop_map(|(n, a)| TaylorSeed::power_exp_decay(n, a).unwrap()),
        (0.5f64..3.0, 0.0f64..0.9).prop_map(|(a, r)| TaylorSeed::exp_bessel_i0(a, r * a).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_minus_one_is_negated_order_one(seed in exp_seed(), m in 1.3f64..8.0) {
        let q = m * seed.radius();
        prop_assert_eq!(h(-1, &seed, q), -h(1, &seed, q));
    }

    #[test]
    fn bessel_recurrence(seed in exp_seed(), nu in 1i32..4, m in 2.0f64..8.0) {
        let q = m * seed.radius();
        let deriv = TaylorSeed::derivative(seed.clone());
        let nuf = f64::from(nu);
        let lhs = (nuf - 1.0) * h(nu + 1, &seed, q);
        let a = (nuf + 1.0) * h(nu - 1, &seed, q);
        let b = 2.0 * nuf / q * h(nu, &deriv, q);
        let scale = lhs.abs().max(a.abs()).max(b.abs());
        prop_assert!((lhs - a - b).abs() <= 1e-9 * scale);
    }

    #[test]
    fn rescaling_the_argument(a in 0.3f64..4.0, order in 0i32..4, m in 1.5f64..8.0) {
        // e^{−ax}: Hₙ(q) = a^{−2} Hₙ[e^{−x}](q/a)
        let q = m * a;
        let scaled = h(order, &TaylorSeed::exp_decay(a).unwrap(), q);
        let unit = h(order, &TaylorSeed::exp_decay(1.0).unwrap(), q / a) / (a * a);
        prop_assert!(rel_diff(scaled, unit) < 1e-12, "{} vs {}", scaled, unit);
    }

    #[test]
    fn derivative_seed_shifts_coefficients(seed in exp_seed(), k in 0usize..60) {
        let d = TaylorSeed::derivative(seed.clone());
        prop_assert_eq!(d.derivative_at_zero(k), seed.derivative_at_zero(k + 1));
    }

    #[test]
    fn exponential_growth_is_bounded_by_rate(seed in exp_seed(), k in 20usize..200) {
        let g = seed.growth();
        prop_assert_eq!(g.kind, GrowthKind::Exponential);
        // |f⁽ᵏ⁾(0)| ≤ C·rateᵏ with a polynomial C
        let l = seed.derivative_log(k);
        if !l.is_zero() {
            let slack = 5.0 * (k as f64 + 2.0).ln() + 10.0;
            prop_assert!(l.log_magnitude() <= k as f64 * g.rate.ln() + slack);
        }
        prop_assert!((seed.radius() - g.rate).abs() <= 1e-12 * g.rate);
    }

    #[test]
    fn decaying_exponential_alternates(a in 0.1f64..5.0, k in 0usize..80) {
        let s = TaylorSeed::exp_decay(a).unwrap();
        let expect = if k % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(s.derivative_log(k).sign(), expect);
    }

    #[test]
    fn barred_series_matches_plain_order_zero(a in 0.3f64..3.0, m in 1.5f64..8.0) {
        let plain = TaylorSeed::exp_decay(a).unwrap();
        let q = m * a;
        let barred = hankel_series_barred(&TaylorSeed::barred(plain.clone()), q, &SeriesOptions::default()).unwrap();
        prop_assert!(rel_diff(barred.value, h(0, &plain, q)) < 1e-12);
    }

    #[test]
    fn odd_derivative_forms_agree(a in 0.3f64..3.0, m in 2.0f64..10.0) {
        let seed = TaylorSeed::exp_decay(a).unwrap();
        let q = m * a;
        let opts = SeriesOptions { tol: 1e-16, ..SeriesOptions::default() };
        let v: Vec<f64> = (1..=3).map(|f| hankel_series_h0_form(f, &seed, q, &opts).unwrap().value).collect();
        prop_assert!(rel_diff(v[0], v[1]) < 1e-13 && rel_diff(v[0], v[2]) < 1e-13);
    }

    #[test]
    fn coefficient_vanishes_only_at_gamma_poles(n in -1i32..6, k in 0usize..300) {
        let pole = k as i32 >= n && (k as i32 - n) % 2 == 0;
        prop_assert_eq!(coefficient(n, k).is_zero(), pole);
    }
}
