//! Ergodic capacity `E[log₂(1 + SIR)]` under the Beta prime SIR law.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use super::sir::BetaPrimeSir;
use crate::specfun::{
    adaptive_quad, hyp2f1_regularized, hyp3f2_regularized, ln_beta, ln_gamma, sin_pi,
    QuadratureSpec, SpecFunError,
};
use crate::Result;

/// Relative agreement required between the two capacity routes.
pub const CAPACITY_AGREEMENT: f64 = 1e-4;

const NEAR_INTEGER: f64 = 1e-6;

/// Capacity from quadrature, with the hypergeometric closed form alongside
/// when it is usable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityEstimate {
    /// Canonical value (quadrature).
    pub value: f64,
    pub closed_form: Option<f64>,
    /// Why the closed form was not evaluated, when it was not.
    pub closed_form_skipped: Option<String>,
}

impl CapacityEstimate {
    /// `None` when there is nothing to compare.
    pub fn routes_agree(&self) -> Option<bool> {
        self.closed_form
            .map(|c| (c - self.value).abs() <= CAPACITY_AGREEMENT * self.value.abs())
    }
}

/// Integrates against the Beta `(α_N, α_D)` density of `u = x / (scale + x)`.
///
/// A shape below 1 makes the density singular at that end; the piece is then
/// mapped with `u = v^{1/α_N}` near 0 or `1 - u = v^{1/α_D}` near 1.
pub fn capacity_quadrature(law: &BetaPrimeSir) -> Result<f64> {
    let (a, b, s) = (law.alpha_n, law.alpha_d, law.scale);
    let lb = ln_beta(a, b)?;
    // log₂(1 + s u/(1-u)) with y = 1 - u
    let gain = |u: f64, y: f64| ((y + s * u).ln() - y.ln()) / LN_2;
    let density = |u: f64, y: f64| ((a - 1.0) * u.ln() + (b - 1.0) * y.ln() - lb).exp();
    let spec = QuadratureSpec::relative(1e-11);
    // split at the mean so a concentrated peak sits on a segment boundary
    let m = a / (a + b);

    let lower = if a < 1.0 {
        let f = |v: f64| {
            if v == 0.0 {
                return 0.0;
            }
            let u = v.powf(1.0 / a);
            ((b - 1.0) * (-u).ln_1p() - lb - a.ln()).exp() * gain(u, 1.0 - u)
        };
        adaptive_quad(f, 0.0, m.powf(a), &spec)?
    } else {
        let f = |u: f64| if u == 0.0 { 0.0 } else { density(u, 1.0 - u) * gain(u, 1.0 - u) };
        adaptive_quad(f, 0.0, m, &spec)?
    };
    let upper = if b < 1.0 {
        let f = |v: f64| {
            if v == 0.0 {
                return 0.0;
            }
            let y = v.powf(1.0 / b);
            ((a - 1.0) * (-y).ln_1p() - lb - b.ln()).exp() * gain(1.0 - y, y)
        };
        adaptive_quad(f, 0.0, (1.0 - m).powf(b), &spec)?
    } else {
        let f = |y: f64| if y == 0.0 { 0.0 } else { density(1.0 - y, y) * gain(1.0 - y, y) };
        adaptive_quad(f, 0.0, 1.0 - m, &spec)?
    };
    Ok(lower + upper)
}

/// Closed form valid for `scale < 1`:
///
/// `C = π csc(π α_D) / (ln 2 · B(α_N, α_D)) ·
///   [Γ(α_D) s^{α_D} ₂F̃₁(α_D, α_D+α_N; α_D+1; s)
///    - s Γ(α_N+1)/Γ(α_N+α_D) ₃F̃₂(1, 1, α_N+1; 2, 2-α_D; s)]`.
///
/// Reports [`SpecFunError::NeedsFallback`] at the `csc` poles (integer
/// `α_D`), outside `s < 1`, and when the bracket cancels catastrophically.
pub fn capacity_closed_form(law: &BetaPrimeSir) -> Result<f64> {
    let (a, b, s) = (law.alpha_n, law.alpha_d, law.scale);
    if (b - b.round()).abs() < NEAR_INTEGER {
        return Err(SpecFunError::NeedsFallback("alpha_d is at a pole of csc(pi alpha_d)").into());
    }
    if s >= 1.0 {
        return Err(SpecFunError::NeedsFallback("scale >= 1 is outside the series region").into());
    }
    let t1 = (ln_gamma(b)? + b * s.ln()).exp() * hyp2f1_regularized(b, a + b, b + 1.0, s)?;
    let t2 = s
        * (ln_gamma(a + 1.0)? - ln_gamma(a + b)?).exp()
        * hyp3f2_regularized(1.0, 1.0, a + 1.0, 2.0, 2.0 - b, s)?;
    let bracket = t1 - t2;
    if bracket.abs() < 1e-8 * t1.abs().max(t2.abs()) {
        return Err(SpecFunError::NeedsFallback("closed form cancels to working precision").into());
    }
    let value = PI / sin_pi(b) / LN_2 * (-ln_beta(a, b)?).exp() * bracket;
    if !value.is_finite() {
        return Err(SpecFunError::NeedsFallback("closed form overflowed").into());
    }
    Ok(value)
}

/// Quadrature value plus the closed-form cross-check where available.
pub fn capacity_estimate(law: &BetaPrimeSir) -> Result<CapacityEstimate> {
    let value = capacity_quadrature(law)?;
    let (closed_form, closed_form_skipped) = match capacity_closed_form(law) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(CapacityEstimate {
        value,
        closed_form,
        closed_form_skipped,
    })
}
