use super::gamma::{digamma, gamma_ratio, rgamma};
use super::{is_nonpositive_integer, sum_series, Result, SpecFunError, MAX_SERIES_TERMS, SERIES_TOL};

/// Distance below which `c - a - b` is treated as an integer in the
/// `z -> 1 - z` transformation.
const INTEGER_SNAP: f64 = 1e-8;

fn poch(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// Kummer's confluent hypergeometric function `M(a, b, z) = ₁F₁(a; b; z)`.
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(SpecFunError::Domain("1F1: b must not be a non-positive integer"));
    }
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(SpecFunError::Domain("1F1: arguments must be finite"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z < 0.0 && !is_nonpositive_integer(a) {
        // Kummer: M(a, b, z) = e^z M(b - a, b, -z), keeps the series positive
        return Ok(z.exp() * hyp1f1(b - a, b, -z)?);
    }
    sum_series(1.0, |n| {
        let n = n as f64;
        (a + n) * z / ((b + n) * (n + 1.0))
    })
}

fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    sum_series(1.0, |n| {
        let n = n as f64;
        (a + n) * (b + n) * z / ((c + n) * (n + 1.0))
    })
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `z < 1`.
///
/// `z < 0` goes through the Pfaff transformation, `z ∈ [0.5, 1)` through the
/// `1 - z` connection formulas (with the logarithmic forms when `c - a - b`
/// is an integer). Series with negative upper parameters are Euler-transformed
/// first to avoid alternating-sign cancellation.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(SpecFunError::Domain("2F1: c must not be a non-positive integer"));
    }
    if !(a.is_finite() && b.is_finite() && c.is_finite()) || z.is_nan() {
        return Err(SpecFunError::Domain("2F1: arguments must be finite"));
    }
    if z >= 1.0 {
        return Err(SpecFunError::Domain("2F1: requires z < 1"));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if z < 0.0 {
        let w = z / (z - 1.0);
        return if is_nonpositive_integer(b) {
            Ok((1.0 - z).powf(-b) * hyp2f1(c - a, b, c, w)?)
        } else {
            Ok((1.0 - z).powf(-a) * hyp2f1(a, c - b, c, w)?)
        };
    }
    if z <= 0.5 {
        return hyp2f1_small(a, b, c, z);
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return hyp2f1_series(a, b, c, z);
    }
    hyp2f1_one_minus_z(a, b, c, z)
}

/// `0 ≤ z ≤ 1/2`: direct series, Euler-transformed when an upper parameter is
/// negative and the transformed ones are not. Terminating series get the same
/// treatment since their alternating terms cancel just as badly.
fn hyp2f1_small(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Ok(1.0);
    }
    if (a < 0.0 || b < 0.0) && c - a >= 0.0 && c - b >= 0.0 {
        return Ok((1.0 - z).powf(c - a - b) * hyp2f1_series(c - a, c - b, c, z)?);
    }
    hyp2f1_series(a, b, c, z)
}

fn hyp2f1_one_minus_z(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let s = c - a - b;
    let m = s.round();
    if (s - m).abs() < INTEGER_SNAP {
        if m < 0.0 {
            // Euler flips the sign of c - a - b
            return Ok((1.0 - z).powf(s) * hyp2f1_one_minus_z(c - a, c - b, c, z)?);
        }
        return hyp2f1_integer_gap(a, b, c, m as usize, z);
    }
    let y = 1.0 - z;
    let c1 = gamma_ratio(&[c, s], &[c - a, c - b])?;
    let t1 = if c1 == 0.0 { 0.0 } else { c1 * hyp2f1_small(a, b, 1.0 - s, y)? };
    let c2 = gamma_ratio(&[c, -s], &[a, b])?;
    let t2 = if c2 == 0.0 {
        0.0
    } else {
        y.powf(s) * c2 * hyp2f1_small(c - a, c - b, 1.0 + s, y)?
    };
    Ok(t1 + t2)
}

/// `c = a + b + m` with integer `m ≥ 0`: logarithmic connection formula.
fn hyp2f1_integer_gap(a: f64, b: f64, c: f64, m: usize, z: f64) -> Result<f64> {
    let y = 1.0 - z;
    let ln_y = y.ln();
    let mf = m as f64;

    let mut finite = 0.0;
    if m > 0 {
        let mut term = 1.0;
        for n in 0..m {
            if n > 0 {
                let k = (n - 1) as f64;
                term *= (a + k) * (b + k) * y / ((k + 1.0) * (1.0 - mf + k));
            }
            finite += term;
        }
        finite *= gamma_ratio(&[mf, c], &[a + mf, b + mf])?;
    }

    let pref = gamma_ratio(&[c], &[a, b])?;
    if pref == 0.0 {
        return Ok(finite);
    }
    // Σ (a+m)_n (b+m)_n / (n! (n+m)!) y^n [ln y - ψ(n+1) - ψ(n+m+1) + ψ(a+n+m) + ψ(b+n+m)]
    let mut coef = rgamma(mf + 1.0);
    let mut psi_n1 = digamma(1.0)?;
    let mut psi_nm1 = digamma(mf + 1.0)?;
    let mut psi_a = digamma(a + mf)?;
    let mut psi_b = digamma(b + mf)?;
    let mut sum = 0.0;
    let mut converged = false;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        let term = coef * (ln_y - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum += term;
        if n >= 4 && term.abs() < SERIES_TOL * sum.abs() {
            converged = true;
            break;
        }
        coef *= (a + mf + nf) * (b + mf + nf) * y / ((nf + 1.0) * (nf + mf + 1.0));
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nm1 += 1.0 / (nf + mf + 1.0);
        psi_a += 1.0 / (a + mf + nf);
        psi_b += 1.0 / (b + mf + nf);
    }
    if !converged {
        return Err(SpecFunError::NotConverged {
            estimate: sum,
            iterations: MAX_SERIES_TERMS,
        });
    }
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(finite - sign * y.powi(m as i32) * pref * sum)
}

fn fallback_on_nonconvergence(err: SpecFunError) -> SpecFunError {
    match err {
        SpecFunError::NotConverged { .. } => {
            SpecFunError::NeedsFallback("hypergeometric series did not converge")
        }
        other => other,
    }
}

/// Regularized `₂F̃₁(a, b; c; z) = ₂F₁(a, b; c; z) / Γ(c)`.
///
/// Defined at non-positive integer `c` by its limit. For `z ≥ 1` (where the
/// function needs analytic continuation) this reports
/// [`SpecFunError::NeedsFallback`].
pub fn hyp2f1_regularized(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z.is_nan() || !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(SpecFunError::Domain("2F1~: arguments must be finite"));
    }
    if z >= 1.0 {
        return Err(SpecFunError::NeedsFallback("2F1~ with z >= 1 needs continuation"));
    }
    if is_nonpositive_integer(c) {
        let k = (-c) as usize;
        let j = k + 1;
        let pref = poch(a, j) * poch(b, j) * z.powi(j as i32) * rgamma(j as f64 + 1.0);
        if pref == 0.0 {
            return Ok(0.0);
        }
        let f = hyp2f1(a + j as f64, b + j as f64, j as f64 + 1.0, z)
            .map_err(fallback_on_nonconvergence)?;
        return Ok(pref * f);
    }
    let f = hyp2f1(a, b, c, z).map_err(fallback_on_nonconvergence)?;
    Ok(f * rgamma(c))
}

/// Regularized `₃F̃₂(a1, a2, a3; b1, b2; z) = ₃F₂ / (Γ(b1) Γ(b2))` for `|z| < 1`.
///
/// Only the direct series is implemented. Outside the unit disc, or when the
/// series fails to converge within the term cap (close to `|z| = 1`), this
/// reports [`SpecFunError::NeedsFallback`].
pub fn hyp3f2_regularized(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    let finite = [a1, a2, a3, b1, b2].iter().all(|v| v.is_finite());
    if !finite || z.is_nan() {
        return Err(SpecFunError::Domain("3F2~: arguments must be finite"));
    }
    if z.abs() >= 1.0 {
        return Err(SpecFunError::NeedsFallback("3F2~ with |z| >= 1 needs continuation"));
    }
    // first index where 1/Γ(b + n) is non-zero for both lower parameters
    let start = |b: f64| {
        if is_nonpositive_integer(b) {
            (1.0 - b) as usize
        } else {
            0
        }
    };
    let n0 = start(b1).max(start(b2));
    let n0f = n0 as f64;
    let first = poch(a1, n0) * poch(a2, n0) * poch(a3, n0) * z.powi(n0 as i32)
        * rgamma(n0f + 1.0)
        * rgamma(b1 + n0f)
        * rgamma(b2 + n0f);
    if z == 0.0 && n0 == 0 {
        return Ok(first);
    }
    sum_series(first, |k| {
        let n = (n0 + k) as f64;
        (a1 + n) * (a2 + n) * (a3 + n) * z / ((b1 + n) * (b2 + n) * (n + 1.0))
    })
    .map_err(fallback_on_nonconvergence)
}
