//! Distance moments and the first two moments of the signal and interference
//! powers.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::channel::rician_moment;
use crate::geometry::{mean_visible_haps, one_minus_one_plus_x_exp, visible_mass_u, SystemParams};
use crate::specfun::{adaptive_quad, exp_scaled_upper_gamma, QuadratureSpec};
use crate::Result;

fn quad_spec() -> QuadratureSpec {
    QuadratureSpec::relative(1e-11)
}

/// `(1 + u²)^{-p}` evaluated as `exp(-p ln1p(u²))`.
fn inv_pow_1p_sq(u: f64, p: f64) -> f64 {
    (-p * (u * u).ln_1p()).exp()
}

/// `E[R_h^{-t ε_h}]` for the distance `R_h = √(w² + H_HAP²)` to a visible
/// HAP, with `w` following the window-truncated visible-HAP law.
pub fn moment_rh(t: f64, params: &SystemParams) -> Result<f64> {
    if t == 0.0 {
        return Ok(1.0);
    }
    let z = params.blockage().zeta;
    let omega = params.window_radius();
    let h = params.h_hap;
    let p = 0.5 * t * params.eps_h;
    // substitute x = ζ w so the integrand is O(1)
    let f = |x: f64| x * (-x).exp() * inv_pow_1p_sq(x / (z * h), p);
    let integral = adaptive_quad(f, 0.0, z * omega, &quad_spec())?;
    Ok(h.powf(-2.0 * p) * integral / one_minus_one_plus_x_exp(z * omega))
}

/// `E[R_g^{-t ε_g / 2}]` for the distance `R_g = √(w² + H_RIS²)` to the
/// nearest visible RIS. The underlying law is defective, so at `t = 0` this
/// returns the probability that a visible RIS exists.
pub fn moment_rg(t: f64, params: &SystemParams) -> Result<f64> {
    let db = params.blockage();
    let lr = params.lambda_ris;
    let h = params.h_ris;
    let p = 0.25 * t * params.eps_g;
    let c = 2.0 * PI * lr * (-db.rho).exp();
    let f = |w: f64| {
        let decay = db.zeta * w + 2.0 * PI * lr * visible_mass_u(w, &db);
        w * (-decay).exp() * inv_pow_1p_sq(w / h, p)
    };
    // bulk of the mass sits near the mean RIS spacing; the tail decays like e^{-ζ w}
    let spacing = 1.0 / lr.sqrt();
    let mut cuts = vec![0.0, spacing, 10.0 * spacing, 10.0 / db.zeta];
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut integral = 0.0;
    for pair in cuts.windows(2) {
        integral += adaptive_quad(f, pair[0], pair[1], &quad_spec())?;
    }
    integral += adaptive_quad(f, *cuts.last().expect("non-empty"), f64::INFINITY, &quad_spec())?;
    Ok(c * h.powf(-2.0 * p) * integral)
}

/// `E[R_q^{-t ε_q / 2}]` for the distance to the nearest HAP (Rayleigh
/// horizontal distance at altitude `H_HAP`):
/// `(π λ_HAP)^{ε_q t/4} e^{π H² λ} Γ(1 - ε_q t/4, π H² λ)`.
pub fn moment_rq(t: f64, params: &SystemParams) -> Result<f64> {
    let lam = params.lambda_hap;
    let q = 0.25 * params.eps_q * t;
    let x = PI * params.h_hap * params.h_hap * lam;
    Ok((PI * lam).powf(q) * exp_scaled_upper_gamma(1.0 - q, x)?)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
fn binom(n: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i as f64).max(0.0) / (i + 1) as f64)
}

/// Everything the gamma fit needs, evaluated once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerMoments {
    pub mean_an: f64,
    pub second_an: f64,
    pub mean_ad: f64,
    pub second_ad: f64,
}

impl PowerMoments {
    pub fn var_an(&self) -> f64 {
        self.second_an - self.mean_an * self.mean_an
    }

    pub fn var_ad(&self) -> f64 {
        self.second_ad - self.mean_ad * self.mean_ad
    }

    pub fn new(params: &SystemParams) -> Result<Self> {
        params.validate()?;
        let (rq, rg, rh) = (params.rician_q(), params.rician_g(), params.rician_h());
        let mut qg = [0.0; 5];
        for (t, slot) in qg.iter_mut().enumerate() {
            *slot = rician_moment(&rq, t as f64)? * rician_moment(&rg, t as f64)?;
        }
        let l = f64::from(params.num_re);

        let mean_an = (l * qg[2] + (l * l - l) * qg[1] * qg[1])
            * moment_rq(2.0, params)?
            * moment_rg(2.0, params)?;
        let second_an = (l * qg[4]
            + 6.0 * binom(l, 2) * qg[2] * qg[2]
            + 12.0 * l * binom(l - 1.0, 2) * qg[2] * qg[1] * qg[1]
            + 4.0 * l * (l - 1.0) * qg[3] * qg[1]
            + 24.0 * binom(l, 4) * qg[1].powi(4))
            * moment_rq(4.0, params)?
            * moment_rg(4.0, params)?;

        let m_vis = mean_visible_haps(params)?;
        let h2 = rician_moment(&rh, 2.0)?;
        let h4 = rician_moment(&rh, 4.0)?;
        let rh1 = moment_rh(1.0, params)?;
        let mean_ad = m_vis * h2 * rh1;
        let second_ad = m_vis * h4 * moment_rh(2.0, params)? + m_vis * (m_vis - 1.0) * h2 * h2 * rh1 * rh1;
        Ok(Self {
            mean_an,
            second_an,
            mean_ad,
            second_ad,
        })
    }
}

/// Mean aggregate signal gain `E[A_N]`.
pub fn mean_an(params: &SystemParams) -> Result<f64> {
    Ok(PowerMoments::new(params)?.mean_an)
}

/// Mean aggregate interference gain `E[A_D]`.
pub fn mean_ad(params: &SystemParams) -> Result<f64> {
    Ok(PowerMoments::new(params)?.mean_ad)
}

pub fn second_moment_an(params: &SystemParams) -> Result<f64> {
    Ok(PowerMoments::new(params)?.second_an)
}

pub fn second_moment_ad(params: &SystemParams) -> Result<f64> {
    Ok(PowerMoments::new(params)?.second_ad)
}
