//! Spatial model: Poisson HAP and RIS fields, the Boolean rectangle blockage
//! field, visibility, and the three horizontal link-distance laws.

mod field;
mod params;

pub use field::{
    sample_blockages, sample_ppp, visible, BlockageIndex, NetworkRealization, Point, Rect,
    VisibilityMode,
};
pub use params::{DerivedBlockage, SystemParams};

use std::f64::consts::PI;

use rand::Rng;

use crate::{Error, Result};

/// `1 - (1 + x) e^{-x}` without cancellation for small `x`.
pub(crate) fn one_minus_one_plus_x_exp(x: f64) -> f64 {
    if x < 0.1 {
        // Σ_{k≥2} (-1)^k (k - 1) x^k / k!
        let mut sum = 0.0;
        let mut p = x; // x^k / k! at k = 1
        for k in 2..20 {
            p *= x / k as f64;
            let t = (k - 1) as f64 * p;
            sum += if k % 2 == 0 { t } else { -t };
        }
        sum
    } else {
        -(-x).exp_m1() - x * (-x).exp()
    }
}

/// Line-of-sight probability `exp(-(ζ w + ρ))` at horizontal distance `w`.
pub fn p_los(w: f64, db: &DerivedBlockage) -> Result<f64> {
    if w.is_nan() || w < 0.0 {
        return Err(Error::Domain("p_los: horizontal distance must be >= 0"));
    }
    Ok((-(db.zeta * w + db.rho)).exp())
}

/// Mean number of visible HAPs over the whole plane, `2π λ_HAP e^{-ρ} / ζ²`.
pub fn mean_visible_haps(params: &SystemParams) -> Result<f64> {
    let db = params.blockage();
    if db.zeta.is_nan() || db.zeta <= 0.0 {
        return Err(Error::Domain("mean_visible_haps diverges without blockages (zeta = 0)"));
    }
    Ok(2.0 * PI * params.lambda_hap * (-db.rho).exp() / (db.zeta * db.zeta))
}

/// Mean number of visible HAPs inside the sampling window (what a simulator
/// truncated to the window actually sees).
pub fn mean_visible_haps_in_window(params: &SystemParams) -> Result<f64> {
    let db = params.blockage();
    Ok(mean_visible_haps(params)? * one_minus_one_plus_x_exp(db.zeta * params.window_radius()))
}

/// Horizontal-distance density of a visible HAP, truncated to the window
/// `[0, ω_h]`. Zero outside the support.
pub fn pdf_whlos(w: f64, params: &SystemParams) -> f64 {
    let omega = params.window_radius();
    if !(0.0..=omega).contains(&w) {
        return 0.0;
    }
    let z = params.blockage().zeta;
    z * z * w * (-z * w).exp() / one_minus_one_plus_x_exp(z * omega)
}

/// `U(w) = e^{-ρ} / ζ² [1 - (ζ w + 1) e^{-ζ w}]`, the visible-RIS mass
/// function divided by `2π λ_RIS`.
pub fn visible_mass_u(w: f64, db: &DerivedBlockage) -> f64 {
    (-db.rho).exp() / (db.zeta * db.zeta) * one_minus_one_plus_x_exp(db.zeta * w)
}

/// Distribution function of the distance to the nearest visible RIS,
/// `1 - exp(-2π λ_RIS U(w))`. Defective: tends to [`ris_exists_mass`].
pub fn cdf_wg(w: f64, params: &SystemParams) -> f64 {
    if w <= 0.0 {
        return 0.0;
    }
    -(-2.0 * PI * params.lambda_ris * visible_mass_u(w, &params.blockage())).exp_m1()
}

/// Density of the horizontal distance to the nearest visible RIS.
pub fn pdf_wg(w: f64, params: &SystemParams) -> f64 {
    if w <= 0.0 {
        return 0.0;
    }
    let db = params.blockage();
    let lr = params.lambda_ris;
    2.0 * PI * lr * w * (-(db.zeta * w + db.rho + 2.0 * PI * lr * visible_mass_u(w, &db))).exp()
}

/// Probability that at least one RIS is visible,
/// `1 - exp(-2π λ_RIS e^{-ρ} / ζ²)`.
pub fn ris_exists_mass(params: &SystemParams) -> f64 {
    let db = params.blockage();
    -(-2.0 * PI * params.lambda_ris * (-db.rho).exp() / (db.zeta * db.zeta)).exp_m1()
}

/// Draws the distance to the nearest visible RIS by inverting the exact
/// distribution function; `None` when no RIS is visible.
pub fn sample_wg<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> Option<f64> {
    let u: f64 = rng.random();
    if u >= ris_exists_mass(params) {
        return None;
    }
    let db = params.blockage();
    // 1 - (1 + x) e^{-x} = c with x = ζ w
    let c = -(-u).ln_1p() / (2.0 * PI * params.lambda_ris) * db.zeta * db.zeta * db.rho.exp();
    Some(invert_gamma2_cdf(c) / db.zeta)
}

/// Solves `1 - (1 + x) e^{-x} = c` for `x ≥ 0`, `c ∈ [0, 1)`.
fn invert_gamma2_cdf(c: f64) -> f64 {
    if c <= 0.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while one_minus_one_plus_x_exp(hi) < c {
        lo = hi;
        hi *= 2.0;
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let g = one_minus_one_plus_x_exp(x) - c;
        if g.abs() <= 1e-17 * c {
            break;
        }
        if g > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let dg = x * (-x).exp();
        let newton = x - g / dg;
        x = if dg > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (hi - lo) <= 1e-15 * hi {
            break;
        }
    }
    x
}

/// Rayleigh density of the horizontal distance to the nearest HAP.
pub fn pdf_wq(w: f64, params: &SystemParams) -> f64 {
    if w < 0.0 {
        return 0.0;
    }
    let l = params.lambda_hap;
    2.0 * PI * l * w * (-PI * l * w * w).exp()
}

/// Draws the horizontal distance to the nearest HAP.
pub fn sample_wq<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    (-(-u).ln_1p() / (PI * params.lambda_hap)).sqrt()
}
