//! Rician small-scale fading: amplitude sampling and fractional moments.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::specfun::{gamma, hyp1f1, ln_gamma};
use crate::{Error, Result};

/// Rician link with K-factor `k` and mean-square amplitude `sigma2 = E[|δ|²]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RicianSpec {
    pub k: f64,
    pub sigma2: f64,
}

impl RicianSpec {
    pub fn new(k: f64, sigma2: f64) -> Result<Self> {
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::InvalidParam {
                field: "k",
                reason: format!("K-factor must be >= 0, got {k}"),
            });
        }
        if !(sigma2.is_finite() && sigma2 > 0.0) {
            return Err(Error::InvalidParam {
                field: "sigma2",
                reason: format!("mean-square power must be > 0, got {sigma2}"),
            });
        }
        Ok(Self { k, sigma2 })
    }
}

/// `e^{-K} ₁F₁(a; 1; K)`.
///
/// Past `K = 200` the product overflows term by term, so the large-argument
/// expansion `K^{a-1}/Γ(a) Σ ((1-a)_s)² / (s! K^s)` is used instead. It
/// terminates (and is exact) for integer `a`.
fn damped_kummer_b1(a: f64, k: f64) -> Result<f64> {
    if k <= 200.0 {
        return Ok((-k).exp() * hyp1f1(a, 1.0, k)?);
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for s in 0..60 {
        let sf = s as f64;
        let next = term * (1.0 - a + sf) * (1.0 - a + sf) / ((sf + 1.0) * k);
        if next.abs() >= term.abs() || next == 0.0 {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    Ok(((a - 1.0) * k.ln() - ln_gamma(a)?).exp() * sum)
}

/// `E[|δ|^t]` for a Rician amplitude:
/// `σ^t Γ(1 + t/2) e^{-K} / (K+1)^{t/2} · ₁F₁(1 + t/2; 1; K)`.
pub fn rician_moment(spec: &RicianSpec, t: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain("rician_moment: order t must be >= 0"));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let a = 1.0 + 0.5 * t;
    Ok(spec.sigma2.powf(0.5 * t) * gamma(a)? / (spec.k + 1.0).powf(0.5 * t)
        * damped_kummer_b1(a, spec.k)?)
}

/// Draws `|X|` with `X` complex Gaussian: LoS mean `√(σ² K/(K+1))` and
/// per-component scatter variance `σ² / (2 (K+1))`.
pub fn sample_rician<R: Rng + ?Sized>(spec: &RicianSpec, rng: &mut R) -> f64 {
    let k1 = spec.k + 1.0;
    let los = (spec.sigma2 * spec.k / k1).sqrt();
    let s = (spec.sigma2 / (2.0 * k1)).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    (los + s * re).hypot(s * im)
}
