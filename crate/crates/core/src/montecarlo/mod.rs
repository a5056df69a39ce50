//! End-to-end trial simulator.
//!
//! Every trial resamples the HAP field, the RIS field and (in explicit mode)
//! the buildings around a user at the origin, draws Rician fading on every
//! link, and records the resulting SIR together with the intermediate gains.
//! Trial `i` draws from its own ChaCha stream `i` under the batch seed, so
//! results do not depend on how trials are scheduled across threads.

mod stats;

pub use stats::{ks_statistic, CoveragePoint, Histogram, MomentEstimate, SimStats};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::sample_rician;
use crate::geometry::{NetworkRealization, Point, SystemParams, VisibilityMode};
use crate::Result;

/// Interference floor substituted when a trial has no visible interferer and
/// a finite capacity contribution is needed.
pub const INTERFERENCE_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimOptions {
    pub mode: VisibilityMode,
    /// Count a visible nearest HAP as an interferer as well. When `false` a
    /// visible nearest HAP is dropped from the interference set.
    pub nearest_hap_interferes: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            mode: VisibilityMode::Thinning,
            nearest_hap_interferes: false,
        }
    }
}

/// One simulated user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// `None` when no RIS is visible (outage by isolation); `+∞` when nothing
    /// interferes.
    pub sir: Option<f64>,
    pub a_n: f64,
    pub a_d: f64,
    pub n_visible_haps: usize,
    pub n_interferers: usize,
    /// Serving-link distances; zero for an isolated trial.
    pub r_q: f64,
    pub r_g: f64,
}

impl TrialOutcome {
    pub fn is_isolated(&self) -> bool {
        self.sir.is_none()
    }

    /// `log₂(1 + SIR)` with the interference floor for interference-free
    /// trials and 0 for isolated ones.
    pub fn spectral_efficiency(&self, params: &SystemParams) -> f64 {
        match self.sir {
            None => 0.0,
            Some(s) if s.is_finite() => s.ln_1p() / std::f64::consts::LN_2,
            Some(_) => (params.p_o * self.a_n / (params.p_i * INTERFERENCE_FLOOR)).ln_1p()
                / std::f64::consts::LN_2,
        }
    }
}

fn nearest(points: &[Point], mut keep: impl FnMut(usize) -> bool) -> Option<(usize, f64)> {
    points
        .iter()
        .enumerate()
        .filter(|(i, _)| keep(*i))
        .map(|(i, p)| (i, p.norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Evaluates the received gains on an already sampled scene.
///
/// The serving HAP is the nearest one regardless of visibility and reaches
/// the user only through the nearest visible RIS. The HAP–RIS distance is
/// approximated by `√(w_q² + H_HAP²)` with `w_q` the user–HAP horizontal
/// distance.
pub fn evaluate_scene<R: rand::Rng + ?Sized>(
    scene: &NetworkRealization,
    params: &SystemParams,
    options: &SimOptions,
    rng: &mut R,
) -> TrialOutcome {
    let serving_hap = nearest(&scene.haps, |_| true);
    let serving_ris = nearest(&scene.riss, |i| scene.ris_visible[i]);

    let (mut a_n, mut r_q, mut r_g) = (0.0, 0.0, 0.0);
    if let (Some((_, w_q)), Some((_, w_g))) = (serving_hap, serving_ris) {
        r_q = w_q.hypot(params.h_hap);
        r_g = w_g.hypot(params.h_ris);
        let (q, g) = (params.rician_q(), params.rician_g());
        let amplitude: f64 = (0..params.num_re)
            .map(|_| sample_rician(&q, rng) * sample_rician(&g, rng))
            .sum();
        a_n = amplitude * amplitude * r_q.powf(-params.eps_q) * r_g.powf(-params.eps_g);
    }

    let skip = match serving_hap {
        Some((i, _)) if !options.nearest_hap_interferes => Some(i),
        _ => None,
    };
    let h = params.rician_h();
    let mut a_d = 0.0;
    let mut n_interferers = 0;
    for (i, p) in scene.haps.iter().enumerate() {
        if !scene.hap_visible[i] || Some(i) == skip {
            continue;
        }
        let amp = sample_rician(&h, rng);
        a_d += amp * amp * p.norm().hypot(params.h_hap).powf(-params.eps_h);
        n_interferers += 1;
    }

    let sir = if serving_hap.is_none() || serving_ris.is_none() {
        None
    } else if a_d == 0.0 {
        Some(f64::INFINITY)
    } else {
        Some(params.p_o * a_n / (params.p_i * a_d))
    };
    TrialOutcome {
        sir,
        a_n,
        a_d,
        n_visible_haps: scene.n_visible_haps(),
        n_interferers,
        r_q,
        r_g,
    }
}

/// Samples one scene and evaluates it.
pub fn run_trial<R: rand::Rng + ?Sized>(
    params: &SystemParams,
    options: &SimOptions,
    rng: &mut R,
) -> Result<TrialOutcome> {
    let scene = NetworkRealization::sample(params, options.mode, rng)?;
    Ok(evaluate_scene(&scene, params, options, rng))
}

/// Generator for trial `index` of a batch seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs `n_trials` trials in parallel; the output is in trial order and
/// identical for any thread count.
pub fn run_trials(
    params: &SystemParams,
    options: &SimOptions,
    n_trials: u64,
    seed: u64,
) -> Result<Vec<TrialOutcome>> {
    params.validate()?;
    let radius = params.window_radius();
    (0..n_trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let scene = NetworkRealization::sample_in(params, options.mode, radius, &mut rng)?;
            Ok(evaluate_scene(&scene, params, options, &mut rng))
        })
        .collect()
}

/// Runs a batch and aggregates it at the given linear SIR thresholds.
pub fn run_batch(
    params: &SystemParams,
    options: &SimOptions,
    n_trials: u64,
    seed: u64,
    thresholds: &[f64],
) -> Result<SimStats> {
    if n_trials == 0 {
        return Err(crate::Error::InvalidParam {
            field: "trials",
            reason: "must be >= 1".into(),
        });
    }
    let outcomes = run_trials(params, options, n_trials, seed)?;
    Ok(SimStats::from_outcomes(&outcomes, params, thresholds))
}
