//! Closed-form performance chain: distance moments, gamma moment matching of
//! the signal and interference gains, the Beta prime SIR law, coverage and
//! ergodic capacity.
//!
//! The interference moments use the fixed mean count of visible HAPs rather
//! than averaging over the Poisson count. Coverage is reported conditioned on
//! a serving RIS being visible unless [`RisConvention::Unconditioned`] is
//! asked for.

mod capacity;
mod moments;
mod sir;

pub use capacity::{
    capacity_closed_form, capacity_estimate, capacity_quadrature, CapacityEstimate,
    CAPACITY_AGREEMENT,
};
pub use moments::{
    mean_ad, mean_an, moment_rg, moment_rh, moment_rq, second_moment_ad, second_moment_an,
    PowerMoments,
};
pub use sir::{sir_cdf, sir_pdf, BetaPrimeSir, GammaFit};

use serde::{Deserialize, Serialize};

use crate::geometry::{ris_exists_mass, SystemParams};
use crate::Result;

/// How the event "no RIS is visible" enters coverage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RisConvention {
    /// Coverage given that a serving RIS exists.
    #[default]
    Conditioned,
    /// Coverage times the probability that a serving RIS exists.
    Unconditioned,
}

/// Gamma moment matching of both gains.
pub fn fit_gamma(params: &SystemParams) -> Result<GammaFit> {
    let m = PowerMoments::new(params)?;
    GammaFit::from_moments(m.mean_an, m.var_an(), m.mean_ad, m.var_ad())
}

/// The analytic chain evaluated once for a parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticModel {
    pub moments: PowerMoments,
    pub fit: GammaFit,
    pub sir: BetaPrimeSir,
    pub ris_exists: f64,
    pub convention: RisConvention,
}

impl AnalyticModel {
    pub fn new(params: &SystemParams) -> Result<Self> {
        let moments = PowerMoments::new(params)?;
        let fit = GammaFit::from_moments(moments.mean_an, moments.var_an(), moments.mean_ad, moments.var_ad())?;
        Ok(Self {
            moments,
            fit,
            sir: fit.sir(params.p_o, params.p_i),
            ris_exists: ris_exists_mass(params),
            convention: RisConvention::default(),
        })
    }

    pub fn with_convention(mut self, convention: RisConvention) -> Self {
        self.convention = convention;
        self
    }

    /// `P(SIR > s_th)` at a linear threshold.
    pub fn coverage(&self, s_th: f64) -> Result<f64> {
        let pc = self.sir.ccdf(s_th)?;
        Ok(match self.convention {
            RisConvention::Conditioned => pc,
            RisConvention::Unconditioned => pc * self.ris_exists,
        })
    }

    pub fn capacity(&self) -> Result<CapacityEstimate> {
        capacity_estimate(&self.sir)
    }
}

/// Coverage probability at a linear SIR threshold, conditioned on a serving
/// RIS existing.
pub fn coverage_probability(s_th: f64, params: &SystemParams) -> Result<f64> {
    AnalyticModel::new(params)?.coverage(s_th)
}

/// Ergodic capacity in bit/s/Hz (quadrature value).
pub fn ergodic_capacity(params: &SystemParams) -> Result<f64> {
    Ok(AnalyticModel::new(params)?.capacity()?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reference_coverage_points() {
        let pc = |l| {
            coverage_probability(1.0, &SystemParams { num_re: l, ..SystemParams::default() }).unwrap()
        };
        let (p128, p256) = (pc(128), pc(256));
        assert!((0.18..=0.34).contains(&p128), "{p128}");
        assert!((0.78..=0.94).contains(&p256), "{p256}");
    }

    #[test]
    fn power_scale_invariance() {
        let base = SystemParams::default();
        let scaled = SystemParams { p_o: 7.5, p_i: 7.5, ..base.clone() };
        let (a, b) = (AnalyticModel::new(&base).unwrap(), AnalyticModel::new(&scaled).unwrap());
        assert_relative_eq!(a.coverage(0.5).unwrap(), b.coverage(0.5).unwrap(), max_relative = 1e-12);
        assert_relative_eq!(a.capacity().unwrap().value, b.capacity().unwrap().value, max_relative = 1e-12);
    }

    #[test]
    fn unconditioned_scales_by_existence_mass() {
        let m = AnalyticModel::new(&SystemParams::default()).unwrap();
        let c = m.coverage(0.1).unwrap();
        let u = m.clone().with_convention(RisConvention::Unconditioned).coverage(0.1).unwrap();
        assert_relative_eq!(u, c * m.ris_exists, max_relative = 1e-15);
        assert!(m.coverage(1e-12).unwrap() > 1.0 - 1e-9);
    }

    #[test]
    fn more_transmit_power_raises_capacity() {
        let base = SystemParams::default();
        let boosted = SystemParams { p_o: 2.0, ..base.clone() };
        assert!(ergodic_capacity(&boosted).unwrap() > ergodic_capacity(&base).unwrap());
    }
}
