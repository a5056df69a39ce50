//! Distance laws, fading moments and the moment chain against independent
//! numerical and statistical references.

use std::f64::consts::PI;

use approx::assert_relative_eq;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rishap::analytic::{moment_rg, moment_rh, moment_rq, AnalyticModel};
use rishap::channel::{rician_moment, sample_rician, RicianSpec};
use rishap::geometry::*;
use rishap::montecarlo::{ks_statistic, MomentEstimate};
use rishap::specfun::{adaptive_quad, gamma, QuadratureSpec};

fn trapezoid(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let inner: f64 = (1..n).map(|i| f(lo + i as f64 * h)).sum();
    h * (0.5 * (f(lo) + f(hi)) + inner)
}

#[test]
fn moment_rh_matches_trapezoid() {
    let p = SystemParams::default();
    let omega = p.window_radius();
    let h2 = p.h_hap * p.h_hap;
    let want = trapezoid(|w| pdf_whlos(w, &p) * (w * w + h2).powf(-0.5 * p.eps_h), 0.0, omega, 1_000_000);
    assert_relative_eq!(moment_rh(1.0, &p).unwrap(), want, max_relative = 1e-6);
}

#[test]
fn moment_rg_matches_trapezoid() {
    for h_ris in [10.0, 50.0, 200.0] {
        let p = SystemParams { h_ris, ..SystemParams::default() };
        let hi = 40.0 / p.blockage().zeta;
        let h2 = h_ris * h_ris;
        let want = trapezoid(|w| pdf_wg(w, &p) * (w * w + h2).powf(-0.5 * p.eps_g), 0.0, hi, 1_000_000);
        assert_relative_eq!(moment_rg(2.0, &p).unwrap(), want, max_relative = 1e-6);
    }
}

#[test]
fn moment_rq_matches_quadrature() {
    let spec = QuadratureSpec::relative(1e-12);
    for lambda_hap in [5e-6, 2e-5] {
        let p = SystemParams { lambda_hap, ..SystemParams::default() };
        let h2 = p.h_hap * p.h_hap;
        for t in [1.0, 2.0, 4.0] {
            let e = t * p.eps_q / 4.0;
            let want = adaptive_quad(|w| pdf_wq(w, &p) * (w * w + h2).powf(-e), 0.0, f64::INFINITY, &spec).unwrap();
            assert_relative_eq!(moment_rq(t, &p).unwrap(), want, max_relative = 1e-8);
        }
    }
}

#[test]
fn moment_rg_reduces_to_rayleigh_without_blockage() {
    let p = SystemParams { lambda_b: 1e-12, h_ris: 1e-9, ..SystemParams::default() };
    // E[W^{-1}] for W Rayleigh with πλ W² ~ Exp(1)
    let want = (PI * p.lambda_ris).sqrt() * gamma(0.5).unwrap();
    assert_relative_eq!(moment_rg(1.0, &p).unwrap(), want, max_relative = 1e-5);
    assert_relative_eq!(ris_exists_mass(&p), 1.0, max_relative = 1e-12);
}

#[test]
fn distance_densities_integrate_to_their_mass() {
    let p = SystemParams::default();
    let spec = QuadratureSpec::relative(1e-10);
    let whlos = adaptive_quad(|w| pdf_whlos(w, &p), 0.0, p.window_radius(), &spec).unwrap();
    assert_relative_eq!(whlos, 1.0, max_relative = 1e-8);
    let wq = adaptive_quad(|w| pdf_wq(w, &p), 0.0, f64::INFINITY, &spec).unwrap();
    assert_relative_eq!(wq, 1.0, max_relative = 1e-8);
    let wg = adaptive_quad(|w| pdf_wg(w, &p), 0.0, f64::INFINITY, &spec).unwrap();
    assert_relative_eq!(wg, ris_exists_mass(&p), max_relative = 1e-8);
    assert_relative_eq!(cdf_wg(1e7, &p), ris_exists_mass(&p), max_relative = 1e-12);
}

#[test]
fn sampled_distances_follow_their_laws() {
    let p = SystemParams { lambda_ris: 5e-6, ..SystemParams::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let wq: Vec<f64> = (0..100_000).map(|_| sample_wq(&p, &mut rng)).collect();
    let l = p.lambda_hap;
    assert!(ks_statistic(&wq, |w| -(-PI * l * w * w).exp_m1()) < 0.01);

    let mass = ris_exists_mass(&p);
    let draws: Vec<Option<f64>> = (0..100_000).map(|_| sample_wg(&p, &mut rng)).collect();
    let wg: Vec<f64> = draws.iter().flatten().copied().collect();
    let found = wg.len() as f64 / draws.len() as f64;
    assert!((found - mass).abs() < 4.0 * (mass * (1.0 - mass) / draws.len() as f64).sqrt());
    assert!(ks_statistic(&wg, |w| cdf_wg(w, &p) / mass) < 0.01);
}

#[test]
fn nearest_point_of_sampled_field_is_rayleigh() {
    let p = SystemParams::default();
    let radius = p.window_radius();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nearest = Vec::new();
    for _ in 0..100_000 {
        let pts = sample_ppp(p.lambda_hap, radius, &mut rng);
        if let Some(d) = pts.iter().map(Point::norm).min_by(f64::total_cmp) {
            nearest.push(d);
        }
    }
    let l = p.lambda_hap;
    let empty = (-PI * l * radius * radius).exp();
    assert!(ks_statistic(&nearest, |w| -(-PI * l * w * w).exp_m1() / (1.0 - empty)) < 0.01);
}

#[test]
fn explicit_blockage_matches_los_probability() {
    let p = SystemParams::default();
    let db = p.blockage();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 20_000;
    for w in [50.0, 200.0, 600.0] {
        let target = Point::new(w, 0.0);
        let margin = p.mean_len.hypot(p.mean_wid);
        let clear = (0..n)
            .filter(|_| {
                let rects = sample_blockages(&p, w + margin, &mut rng);
                !BlockageIndex::new(&rects).blocks(Point::ORIGIN, target)
            })
            .count() as f64
            / n as f64;
        let want = p_los(w, &db).unwrap();
        let se = (want * (1.0 - want) / n as f64).sqrt();
        assert!((clear - want).abs() < 4.0 * se, "w = {w}: {clear} vs {want}");
    }
}

#[test]
fn visible_hap_count_matches_window_mean() {
    let p = SystemParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let counts: Vec<f64> = (0..20_000)
        .map(|_| NetworkRealization::sample(&p, VisibilityMode::Thinning, &mut rng).unwrap().n_visible_haps() as f64)
        .collect();
    let est = MomentEstimate::from_samples(&counts);
    let want = mean_visible_haps_in_window(&p).unwrap();
    assert!((est.mean - want).abs() < 4.0 * est.mean_se, "{} vs {want}", est.mean);
    assert!(want <= mean_visible_haps(&p).unwrap());
}

#[test]
fn rician_moments_match_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (k, s2) in [(0.0, 1.0), (1.0, 1.0), (10.0, 2.0)] {
        let spec = RicianSpec::new(k, s2).unwrap();
        let xs: Vec<f64> = (0..1_000_000).map(|_| sample_rician(&spec, &mut rng)).collect();
        for t in [1.0, 2.0, 4.0] {
            let powered: Vec<f64> = xs.iter().map(|x| x.powf(t)).collect();
            let est = MomentEstimate::from_samples(&powered);
            let want = rician_moment(&spec, t).unwrap();
            assert!((est.mean - want).abs() < 3.0 * est.mean_se, "K={k} t={t}: {} vs {want}", est.mean);
        }
    }
}

#[test]
fn rician_rayleigh_limit() {
    // K = 0: E|δ|^t = σ^t Γ(1 + t/2)
    let spec = RicianSpec::new(0.0, 1.0).unwrap();
    for t in [0.5, 1.0, 3.0] {
        assert_relative_eq!(rician_moment(&spec, t).unwrap(), gamma(1.0 + 0.5 * t).unwrap(), max_relative = 1e-12);
    }
    // large K concentrates the amplitude at σ
    let spec = RicianSpec::new(1e6, 4.0).unwrap();
    assert_relative_eq!(rician_moment(&spec, 1.0).unwrap(), 2.0, max_relative = 1e-5);
}

#[test]
fn coverage_is_monotone_in_threshold_and_hap_density() {
    let model = AnalyticModel::new(&SystemParams::default()).unwrap();
    let mut last = 1.0;
    for db in -40..=40 {
        let c = model.coverage(10f64.powf(db as f64 / 10.0)).unwrap();
        assert!((0.0..=1.0).contains(&c));
        assert!(c <= last + 1e-12);
        last = c;
    }
    let mut last = 1.0;
    for lambda_hap in [2e-6, 5e-6, 1e-5, 1.5e-5, 2e-5, 4e-5] {
        let p = SystemParams { lambda_hap, num_re: 256, ..SystemParams::default() };
        let c = AnalyticModel::new(&p).unwrap().coverage(1.0).unwrap();
        assert!(c <= last + 1e-12);
        last = c;
    }
}

#[test]
fn capacity_falls_with_ris_height() {
    let mut caps = Vec::new();
    for h_ris in [25.0, 50.0, 75.0, 100.0, 150.0, 200.0] {
        for (num_re, k) in [(128, 1.0), (256, 1.0), (256, 10.0)] {
            let mut p = SystemParams { h_ris, num_re, ..SystemParams::default() };
            p.set_k_factor(k);
            let c = AnalyticModel::new(&p).unwrap().capacity().unwrap().value;
            caps.push(((num_re, k.to_bits()), c));
        }
    }
    for key in [(128, 1f64.to_bits()), (256, 1f64.to_bits()), (256, 10f64.to_bits())] {
        let series: Vec<f64> = caps.iter().filter(|(k, _)| *k == key).map(|(_, c)| *c).collect();
        assert!(series.windows(2).all(|w| w[1] <= w[0]), "{series:?}");
    }
}
