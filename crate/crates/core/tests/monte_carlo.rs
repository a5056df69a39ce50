//! Simulator statistics against the analytic chain where the two must agree.

use rishap::analytic::{mean_an, PowerMoments};
use rishap::geometry::{mean_visible_haps_in_window, ris_exists_mass, SystemParams, VisibilityMode};
use rishap::montecarlo::{run_batch, run_trials, SimOptions};

#[test]
fn isolation_rate_matches_ris_existence() {
    let p = SystemParams { lambda_ris: 1e-5, ..SystemParams::default() };
    let n = 20_000;
    let stats = run_batch(&p, &SimOptions::default(), n, 8, &[1.0]).unwrap();
    let q = 1.0 - ris_exists_mass(&p);
    let se = (q * (1.0 - q) / n as f64).sqrt();
    assert!((stats.isolated_fraction() - q).abs() < 4.0 * se);
}

#[test]
fn serving_gain_mean_matches_analytic() {
    let p = SystemParams::default();
    let stats = run_batch(&p, &SimOptions::default(), 20_000, 12, &[1.0]).unwrap();
    let want = mean_an(&p).unwrap();
    assert!((stats.a_n.mean - want).abs() < 4.0 * stats.a_n.mean_se, "{} vs {want}", stats.a_n.mean);
    let m = PowerMoments::new(&p).unwrap();
    assert!((stats.a_n.variance - m.var_an()).abs() < 4.0 * stats.a_n.variance_se);
}

#[test]
fn interference_mean_matches_when_nearest_hap_counts() {
    let p = SystemParams::default();
    let o = SimOptions { nearest_hap_interferes: true, ..SimOptions::default() };
    let stats = run_batch(&p, &o, 20_000, 13, &[1.0]).unwrap();
    let want = PowerMoments::new(&p).unwrap().mean_ad;
    assert!((stats.a_d.mean - want).abs() < 4.0 * stats.a_d.mean_se, "{} vs {want}", stats.a_d.mean);
    let haps = mean_visible_haps_in_window(&p).unwrap();
    assert!((stats.visible_haps.mean - haps).abs() < 4.0 * stats.visible_haps.mean_se);
}

#[test]
fn explicit_and_thinned_visibility_agree_on_counts() {
    let p = SystemParams { lambda_hap: 2e-5, ..SystemParams::default() };
    let thin = run_batch(&p, &SimOptions::default(), 3_000, 1, &[1.0]).unwrap();
    let o = SimOptions { mode: VisibilityMode::Explicit, ..SimOptions::default() };
    let expl = run_batch(&p, &o, 3_000, 1, &[1.0]).unwrap();
    let se = thin.visible_haps.mean_se.hypot(expl.visible_haps.mean_se);
    assert!((thin.visible_haps.mean - expl.visible_haps.mean).abs() < 4.0 * se);
}

#[test]
fn trials_do_not_depend_on_pool_size() {
    let p = SystemParams::default();
    let o = SimOptions::default();
    let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let a = pool(1).install(|| run_trials(&p, &o, 500, 77)).unwrap();
    let b = pool(3).install(|| run_trials(&p, &o, 500, 77)).unwrap();
    assert_eq!(a, b);
    let c = pool(1).install(|| run_trials(&p, &o, 500, 78)).unwrap();
    assert_ne!(a, c);
}

#[test]
fn coverage_estimates_are_ordered_and_bounded() {
    let p = SystemParams { num_re: 256, ..SystemParams::default() };
    let th: Vec<f64> = [-10.0f64, 0.0, 10.0].iter().map(|d| 10f64.powf(d / 10.0)).collect();
    let stats = run_batch(&p, &SimOptions::default(), 5_000, 3, &th).unwrap();
    let probs: Vec<f64> = stats.coverage.iter().map(|c| c.probability).collect();
    assert!(probs.iter().all(|q| (0.0..=1.0).contains(q)));
    assert!(probs.windows(2).all(|w| w[1] <= w[0]));
    assert!(run_batch(&p, &SimOptions::default(), 0, 3, &th).is_err());
}
