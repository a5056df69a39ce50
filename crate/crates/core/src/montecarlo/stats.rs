use serde::{Deserialize, Serialize};

use super::TrialOutcome;
use crate::geometry::SystemParams;

fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

/// Sample mean, variance and raw second moment, each with a standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub n: usize,
    pub mean: f64,
    pub mean_se: f64,
    pub variance: f64,
    pub variance_se: f64,
    pub second: f64,
    pub second_se: f64,
}

impl MomentEstimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Self {
                n,
                mean: f64::NAN,
                mean_se: f64::NAN,
                variance: f64::NAN,
                variance_se: f64::NAN,
                second: f64::NAN,
                second_se: f64::NAN,
            };
        }
        let nf = n as f64;
        let m = mean(xs);
        let dev2: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
        let m2 = mean(&dev2);
        let m4 = mean(&dev2.iter().map(|d| d * d).collect::<Vec<_>>());
        let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let second = mean(&sq);
        let sq_var = mean(&sq.iter().map(|s| (s - second) * (s - second)).collect::<Vec<_>>());
        let variance = if n > 1 { m2 * nf / (nf - 1.0) } else { 0.0 };
        Self {
            n,
            mean: m,
            mean_se: (variance / nf).sqrt(),
            variance,
            variance_se: ((m4 - m2 * m2).max(0.0) / nf).sqrt(),
            second,
            second_se: (sq_var / nf).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoveragePoint {
    /// Linear SIR threshold.
    pub threshold: f64,
    pub probability: f64,
    pub std_error: f64,
}

/// SIR density on a dB grid, normalized by the total trial count so that
/// isolated and interference-free trials are left out of its mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo_db: f64,
    pub hi_db: f64,
    /// Density per dB in each bin.
    pub density: Vec<f64>,
    pub below: usize,
    pub above: usize,
}

impl Histogram {
    pub const LO_DB: f64 = -60.0;
    pub const HI_DB: f64 = 60.0;
    pub const BINS: usize = 240;

    fn from_sir(sirs: impl Iterator<Item = f64>, total: usize) -> Self {
        let width = (Self::HI_DB - Self::LO_DB) / Self::BINS as f64;
        let mut counts = vec![0usize; Self::BINS];
        let (mut below, mut above) = (0, 0);
        for s in sirs {
            let db = 10.0 * s.log10();
            if db < Self::LO_DB {
                below += 1;
            } else if db >= Self::HI_DB {
                above += 1;
            } else {
                counts[((db - Self::LO_DB) / width) as usize] += 1;
            }
        }
        let norm = total.max(1) as f64 * width;
        Self {
            lo_db: Self::LO_DB,
            hi_db: Self::HI_DB,
            density: counts.iter().map(|&c| c as f64 / norm).collect(),
            below,
            above,
        }
    }

    pub fn bin_width_db(&self) -> f64 {
        (self.hi_db - self.lo_db) / self.density.len() as f64
    }

    pub fn bin_centers_db(&self) -> Vec<f64> {
        let w = self.bin_width_db();
        (0..self.density.len())
            .map(|i| self.lo_db + (i as f64 + 0.5) * w)
            .collect()
    }
}

/// Aggregate of a batch of trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimStats {
    pub trials: usize,
    pub isolated: usize,
    pub interference_free: usize,
    pub coverage: Vec<CoveragePoint>,
    /// Mean `log₂(1 + SIR)` over all trials.
    pub capacity: f64,
    pub capacity_se: f64,
    /// Gain statistics: `A_N` over trials with a serving RIS, `A_D` over all.
    pub a_n: MomentEstimate,
    pub a_d: MomentEstimate,
    pub visible_haps: MomentEstimate,
    pub sir_histogram: Histogram,
}

impl SimStats {
    pub fn from_outcomes(outcomes: &[TrialOutcome], params: &SystemParams, thresholds: &[f64]) -> Self {
        let n = outcomes.len();
        let nf = n.max(1) as f64;
        let coverage = thresholds
            .iter()
            .map(|&t| {
                let hits = outcomes
                    .iter()
                    .filter(|o| matches!(o.sir, Some(s) if s > t))
                    .count();
                let p = hits as f64 / nf;
                CoveragePoint {
                    threshold: t,
                    probability: p,
                    std_error: (p * (1.0 - p) / nf).sqrt(),
                }
            })
            .collect();
        let se: Vec<f64> = outcomes.iter().map(|o| o.spectral_efficiency(params)).collect();
        let cap = MomentEstimate::from_samples(&se);
        let a_n: Vec<f64> = outcomes.iter().filter(|o| !o.is_isolated()).map(|o| o.a_n).collect();
        let a_d: Vec<f64> = outcomes.iter().map(|o| o.a_d).collect();
        let vis: Vec<f64> = outcomes.iter().map(|o| o.n_visible_haps as f64).collect();
        let finite = outcomes.iter().filter_map(|o| o.sir).filter(|s| s.is_finite());
        Self {
            trials: n,
            isolated: outcomes.iter().filter(|o| o.is_isolated()).count(),
            interference_free: outcomes.iter().filter(|o| o.sir == Some(f64::INFINITY)).count(),
            coverage,
            capacity: cap.mean,
            capacity_se: cap.mean_se,
            a_n: MomentEstimate::from_samples(&a_n),
            a_d: MomentEstimate::from_samples(&a_d),
            visible_haps: MomentEstimate::from_samples(&vis),
            sir_histogram: Histogram::from_sir(finite, n),
        }
    }

    pub fn isolated_fraction(&self) -> f64 {
        self.isolated as f64 / self.trials.max(1) as f64
    }

    pub fn interference_free_fraction(&self) -> f64 {
        self.interference_free as f64 / self.trials.max(1) as f64
    }
}

/// Kolmogorov–Smirnov distance between the empirical law of `samples` and
/// `cdf`. Infinite samples are allowed (`cdf(∞)` should be 1).
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}
