use serde::{Deserialize, Serialize};

use crate::channel::RicianSpec;
use crate::{Error, Result};

/// Every scenario constant of the network model.
///
/// Densities are per square metre, heights and lengths in metres, powers in
/// watts. Rician K-factors are linear. `window_radius` is the radius of the
/// disc on which fields are sampled and the visible-HAP distance law is
/// truncated; `None` means the default `10 / ζ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub lambda_hap: f64,
    pub lambda_ris: f64,
    pub lambda_b: f64,
    pub h_hap: f64,
    pub h_ris: f64,
    pub mean_len: f64,
    pub mean_wid: f64,
    pub num_re: u32,
    pub k_q: f64,
    pub k_g: f64,
    pub k_h: f64,
    pub sigma2_q: f64,
    pub sigma2_g: f64,
    pub sigma2_h: f64,
    pub eps_q: f64,
    pub eps_g: f64,
    pub eps_h: f64,
    pub p_o: f64,
    pub p_i: f64,
    pub window_radius: Option<f64>,
}

impl Default for SystemParams {
    /// Urban reference scenario: 5 HAPs per 10⁶ m² at 50 km, 50 RISs per
    /// 10⁶ m² at 50 m, 100 buildings per 10⁶ m² of mean footprint 25 m × 25 m,
    /// free-space exponents, equal powers, K = 1 and unit mean-square fading.
    fn default() -> Self {
        Self {
            lambda_hap: 5e-6,
            lambda_ris: 50e-6,
            lambda_b: 100e-6,
            h_hap: 50e3,
            h_ris: 50.0,
            mean_len: 25.0,
            mean_wid: 25.0,
            num_re: 64,
            k_q: 1.0,
            k_g: 1.0,
            k_h: 1.0,
            sigma2_q: 1.0,
            sigma2_g: 1.0,
            sigma2_h: 1.0,
            eps_q: 2.0,
            eps_g: 2.0,
            eps_h: 2.0,
            p_o: 1.0,
            p_i: 1.0,
            window_radius: None,
        }
    }
}

/// Boolean-model constants `ζ = 2 λ_B (E[L] + E[W]) / π` and
/// `ρ = λ_B E[L] E[W]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedBlockage {
    pub zeta: f64,
    pub rho: f64,
}

impl DerivedBlockage {
    pub fn new(lambda_b: f64, mean_len: f64, mean_wid: f64) -> Self {
        Self {
            zeta: 2.0 * lambda_b * (mean_len + mean_wid) / std::f64::consts::PI,
            rho: lambda_b * mean_len * mean_wid,
        }
    }
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParam {
            field,
            reason: format!("must be finite and > 0, got {v}"),
        })
    }
}

impl SystemParams {
    pub fn blockage(&self) -> DerivedBlockage {
        DerivedBlockage::new(self.lambda_b, self.mean_len, self.mean_wid)
    }

    /// Effective window radius: the pinned value, or `10 / ζ`.
    pub fn window_radius(&self) -> f64 {
        self.window_radius
            .unwrap_or_else(|| 10.0 / self.blockage().zeta)
    }

    /// Smallest admissible window, `√(2 e^{-ρ}) / ζ`.
    pub fn min_window_radius(&self) -> f64 {
        let db = self.blockage();
        (2.0 * (-db.rho).exp()).sqrt() / db.zeta
    }

    pub fn rician_q(&self) -> RicianSpec {
        RicianSpec {
            k: self.k_q,
            sigma2: self.sigma2_q,
        }
    }

    pub fn rician_g(&self) -> RicianSpec {
        RicianSpec {
            k: self.k_g,
            sigma2: self.sigma2_g,
        }
    }

    pub fn rician_h(&self) -> RicianSpec {
        RicianSpec {
            k: self.k_h,
            sigma2: self.sigma2_h,
        }
    }

    /// Sets the same K-factor on all three links.
    pub fn set_k_factor(&mut self, k: f64) {
        self.k_q = k;
        self.k_g = k;
        self.k_h = k;
    }

    pub fn set_mean_len_wid(&mut self, v: f64) {
        self.mean_len = v;
        self.mean_wid = v;
    }

    pub fn validate(&self) -> Result<()> {
        positive("lambda_hap", self.lambda_hap)?;
        positive("lambda_ris", self.lambda_ris)?;
        positive("lambda_b", self.lambda_b)?;
        positive("h_hap", self.h_hap)?;
        positive("h_ris", self.h_ris)?;
        positive("mean_len", self.mean_len)?;
        positive("mean_wid", self.mean_wid)?;
        positive("sigma2_q", self.sigma2_q)?;
        positive("sigma2_g", self.sigma2_g)?;
        positive("sigma2_h", self.sigma2_h)?;
        positive("p_o", self.p_o)?;
        positive("p_i", self.p_i)?;
        if self.num_re == 0 {
            return Err(Error::InvalidParam {
                field: "num_re",
                reason: "must be >= 1".into(),
            });
        }
        for (field, k) in [("k_q", self.k_q), ("k_g", self.k_g), ("k_h", self.k_h)] {
            if !(k.is_finite() && k >= 0.0) {
                return Err(Error::InvalidParam {
                    field,
                    reason: format!("K-factor must be finite and >= 0, got {k}"),
                });
            }
        }
        for (field, e) in [("eps_q", self.eps_q), ("eps_g", self.eps_g), ("eps_h", self.eps_h)] {
            if !(e.is_finite() && e >= 2.0) {
                return Err(Error::InvalidParam {
                    field,
                    reason: format!("path-loss exponent must be >= 2, got {e}"),
                });
            }
        }
        let w = self.window_radius();
        let w_min = self.min_window_radius();
        if !(w.is_finite() && w > w_min) {
            return Err(Error::InvalidParam {
                field: "window_radius",
                reason: format!("must exceed sqrt(2 exp(-rho)) / zeta = {w_min:.3} m, got {w}"),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn derived_blockage_defaults() {
        let db = SystemParams::default().blockage();
        assert_relative_eq!(db.zeta, 1.0 / (100.0 * std::f64::consts::PI), max_relative = 1e-14);
        assert_relative_eq!(db.rho, 0.0625, max_relative = 1e-14);
        assert_relative_eq!(SystemParams::default().window_radius(), 1000.0 * std::f64::consts::PI, max_relative = 1e-12);
    }

    #[test]
    fn validation_rejects_bad_fields() {
        SystemParams::default().validate().unwrap();
        let p = SystemParams { eps_g: 1.5, ..SystemParams::default() };
        assert!(matches!(p.validate(), Err(Error::InvalidParam { field: "eps_g", .. })));
        let p = SystemParams { window_radius: Some(100.0), ..SystemParams::default() };
        assert!(matches!(p.validate(), Err(Error::InvalidParam { field: "window_radius", .. })));
        let p = SystemParams { num_re: 0, ..SystemParams::default() };
        assert!(p.validate().is_err());
        let p = SystemParams { lambda_b: 0.0, ..SystemParams::default() };
        assert!(p.validate().is_err());
    }
}
