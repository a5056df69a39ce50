//! Randomized invariants.

use proptest::prelude::*;
use rishap::analytic::{capacity_estimate, AnalyticModel, BetaPrimeSir};
use rishap::cli::RunConfig;
use rishap::geometry::{cdf_wg, p_los, ris_exists_mass, DerivedBlockage, SystemParams};
use rishap::montecarlo::{run_trial, trial_rng, SimOptions};
use rishap::specfun::{exp_scaled_upper_gamma, hyp2f1};

fn params() -> impl Strategy<Value = SystemParams> {
    (1e-6..4e-5f64, 5e-6..2e-4f64, 2e-5..4e-4f64, 20.0..150.0f64, prop::sample::select(vec![32u32, 64, 128, 256]), 0.0..20.0f64, 10.0..40.0f64)
        .prop_map(|(lambda_hap, lambda_ris, lambda_b, h_ris, num_re, k, lw)| {
            let mut p = SystemParams { lambda_hap, lambda_ris, lambda_b, h_ris, num_re, ..SystemParams::default() };
            p.set_k_factor(k);
            p.set_mean_len_wid(lw);
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn upper_gamma_recurrence(a in -3.0..5.0f64, x in 0.1..100.0f64) {
        let lhs = exp_scaled_upper_gamma(a + 1.0, x).unwrap();
        let rhs = a * exp_scaled_upper_gamma(a, x).unwrap() + x.powf(a);
        prop_assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs().max(rhs.abs()));
    }

    #[test]
    fn euler_transformation(a in -3.0..6.0f64, b in -3.0..6.0f64, c in 0.3..7.0f64, z in 0.0..0.9f64) {
        let lhs = hyp2f1(a, b, c, z).unwrap();
        let rhs = (1.0 - z).powf(c - a - b) * hyp2f1(c - a, c - b, c, z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-7 * lhs.abs().max(rhs.abs()).max(1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn beta_prime_cdf_is_a_distribution(a in 0.2..30.0f64, b in 0.2..30.0f64, s in 1e-3..1e3f64, x in 1e-4..1e4f64) {
        let law = BetaPrimeSir { alpha_n: a, alpha_d: b, scale: s };
        let c = law.cdf(x).unwrap();
        let cc = law.ccdf(x).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
        prop_assert!((c + cc - 1.0).abs() < 1e-10);
        prop_assert!(law.cdf(1.5 * x).unwrap() >= c - 1e-12);
    }

    #[test]
    fn capacity_routes_agree_when_valid(a in 0.3..12.0f64, b in 0.3..12.0f64, s in 0.01..0.99f64) {
        let est = capacity_estimate(&BetaPrimeSir { alpha_n: a, alpha_d: b, scale: s }).unwrap();
        prop_assert!(est.value > 0.0);
        if est.closed_form.is_some() {
            prop_assert_eq!(est.routes_agree(), Some(true));
        }
    }

    #[test]
    fn los_and_ris_laws_are_monotone(lambda_b in 1e-6..1e-3f64, lw in 5.0..50.0f64, w in 0.0..5e3f64) {
        let db = DerivedBlockage::new(lambda_b, lw, lw);
        let p0 = p_los(w, &db).unwrap();
        prop_assert!((0.0..=1.0).contains(&p0));
        prop_assert!(p_los(w + 10.0, &db).unwrap() <= p0);
        let p = SystemParams { lambda_b, mean_len: lw, mean_wid: lw, ..SystemParams::default() };
        prop_assert!(cdf_wg(w, &p) <= cdf_wg(w + 10.0, &p) + 1e-15);
        prop_assert!(cdf_wg(w, &p) <= ris_exists_mass(&p) + 1e-15);
    }

    #[test]
    fn coverage_falls_with_threshold(p in params(), lo_db in -30.0..30.0f64, gap in 0.1..20.0f64) {
        let m = AnalyticModel::new(&p).unwrap();
        let lo = m.coverage(10f64.powf(lo_db / 10.0)).unwrap();
        let hi = m.coverage(10f64.powf((lo_db + gap) / 10.0)).unwrap();
        prop_assert!((0.0..=1.0).contains(&lo));
        prop_assert!(hi <= lo + 1e-12);
    }

    #[test]
    fn common_power_scaling_is_invisible(p in params(), scale in 1e-3..1e3f64) {
        let q = SystemParams { p_o: p.p_o * scale, p_i: p.p_i * scale, ..p.clone() };
        let a = AnalyticModel::new(&p).unwrap().coverage(1.0).unwrap();
        let b = AnalyticModel::new(&q).unwrap().coverage(1.0).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn config_text_round_trips(p in params(), trials in 1u64..1_000_000, seed in any::<u64>()) {
        let mut cfg = RunConfig { params: p, ..RunConfig::default() };
        cfg.sweep.trials = trials;
        cfg.sweep.seed = seed;
        let mut back = RunConfig::default();
        back.apply_text(&cfg.to_text(), "round trip").unwrap();
        prop_assert_eq!(back, cfg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn trials_are_reproducible(seed in any::<u64>(), index in 0u64..1_000_000) {
        let p = SystemParams::default();
        let o = SimOptions::default();
        let a = run_trial(&p, &o, &mut trial_rng(seed, index)).unwrap();
        let b = run_trial(&p, &o, &mut trial_rng(seed, index)).unwrap();
        prop_assert_eq!(a, b);
        if let Some(s) = a.sir {
            prop_assert!(s > 0.0);
            prop_assert!(a.a_n > 0.0);
        }
    }
}
