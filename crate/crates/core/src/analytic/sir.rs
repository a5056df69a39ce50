//! Generalized Beta prime law of the ratio of two independent gamma powers.

use serde::{Deserialize, Serialize};

use crate::specfun::{hyp2f1, ln_beta};
use crate::{Error, Result};

/// Moment-matched gamma shapes and scales of the aggregate signal (`N`) and
/// interference (`D`) gains, before transmit powers are applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaFit {
    pub alpha_n: f64,
    pub beta_n: f64,
    pub alpha_d: f64,
    pub beta_d: f64,
}

impl GammaFit {
    /// `α = E²/Var`, `β = Var/E` for each of the two gains.
    pub fn from_moments(mean_n: f64, var_n: f64, mean_d: f64, var_d: f64) -> Result<Self> {
        if !(var_n > 0.0 && var_n.is_finite()) {
            return Err(Error::DegenerateFit("signal variance is not positive"));
        }
        if !(var_d > 0.0 && var_d.is_finite()) {
            return Err(Error::DegenerateFit("interference variance is not positive"));
        }
        if !(mean_n > 0.0 && mean_d > 0.0) {
            return Err(Error::DegenerateFit("mean gain is not positive"));
        }
        Ok(Self {
            alpha_n: mean_n * mean_n / var_n,
            beta_n: var_n / mean_n,
            alpha_d: mean_d * mean_d / var_d,
            beta_d: var_d / mean_d,
        })
    }

    pub fn sir(&self, p_o: f64, p_i: f64) -> BetaPrimeSir {
        BetaPrimeSir {
            alpha_n: self.alpha_n,
            alpha_d: self.alpha_d,
            scale: p_o * self.beta_n / (p_i * self.beta_d),
        }
    }
}

/// SIR `= (P_o N) / (P_i D)` with `N ~ Γ(α_N, β_N)`, `D ~ Γ(α_D, β_D)`:
/// `SIR / scale` is standard Beta prime `(α_N, α_D)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaPrimeSir {
    pub alpha_n: f64,
    pub alpha_d: f64,
    pub scale: f64,
}

impl BetaPrimeSir {
    /// `I_z(α_N, α_D)` at `z = x / (scale + x)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain("SIR cdf: x must be >= 0"));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        if x == f64::INFINITY {
            return Ok(1.0);
        }
        let z = x / (self.scale + x);
        let y = self.scale / (self.scale + x);
        if z < 0.5 {
            self.lower_tail(z)
        } else {
            Ok(1.0 - self.upper_tail(y)?)
        }
    }

    /// `P(SIR > x)`, computed from the upper tail directly so that small
    /// values keep their relative accuracy.
    pub fn ccdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain("SIR ccdf: x must be >= 0"));
        }
        if x == 0.0 {
            return Ok(1.0);
        }
        if x == f64::INFINITY {
            return Ok(0.0);
        }
        let z = x / (self.scale + x);
        let y = self.scale / (self.scale + x);
        if y < 0.5 {
            self.upper_tail(y)
        } else {
            Ok(1.0 - self.lower_tail(z)?)
        }
    }

    // z^a / (a B) ₂F₁(a, 1 - b; a + 1; z)
    fn lower_tail(&self, z: f64) -> Result<f64> {
        let (a, b) = (self.alpha_n, self.alpha_d);
        let lead = (a * z.ln() - a.ln() - ln_beta(a, b)?).exp();
        Ok((lead * hyp2f1(a, 1.0 - b, a + 1.0, z)?).clamp(0.0, 1.0))
    }

    fn upper_tail(&self, y: f64) -> Result<f64> {
        let (a, b) = (self.alpha_n, self.alpha_d);
        let lead = (b * y.ln() - b.ln() - ln_beta(a, b)?).exp();
        Ok((lead * hyp2f1(b, 1.0 - a, b + 1.0, y)?).clamp(0.0, 1.0))
    }

    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain("SIR pdf: x must be >= 0"));
        }
        let (a, b, s) = (self.alpha_n, self.alpha_d, self.scale);
        let r = x / s;
        Ok(-s.ln() - ln_beta(a, b)? + (a - 1.0) * r.ln() - (a + b) * r.ln_1p())
    }

    /// `(x/s)^{α_N-1} (1 + x/s)^{-(α_N+α_D)} / (s B(α_N, α_D))`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x == 0.0 && self.alpha_n == 1.0 {
            return Ok((-self.scale.ln() - ln_beta(1.0, self.alpha_d)?).exp());
        }
        Ok(self.ln_pdf(x)?.exp())
    }

    /// `scale α_N / (α_D - 1)`; infinite for `α_D ≤ 1`.
    pub fn mean(&self) -> f64 {
        if self.alpha_d > 1.0 {
            self.scale * self.alpha_n / (self.alpha_d - 1.0)
        } else {
            f64::INFINITY
        }
    }
}

pub fn sir_cdf(x: f64, fit: &GammaFit, p_o: f64, p_i: f64) -> Result<f64> {
    fit.sir(p_o, p_i).cdf(x)
}

pub fn sir_pdf(x: f64, fit: &GammaFit, p_o: f64, p_i: f64) -> Result<f64> {
    fit.sir(p_o, p_i).pdf(x)
}
