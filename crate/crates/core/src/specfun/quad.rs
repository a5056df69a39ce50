use super::{Result, SpecFunError};

/// Tolerances for [`adaptive_quad`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(SpecFunError::Domain("quadrature tolerances must be > 0"));
        }
        if max_subdivisions == 0 {
            return Err(SpecFunError::Domain("max_subdivisions must be >= 1"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }

    /// Pure relative tolerance; the absolute floor is set at the bottom of the
    /// normal f64 range so tiny integrals are still resolved.
    pub fn relative(rel_tol: f64) -> Self {
        Self {
            abs_tol: f64::MIN_POSITIVE,
            rel_tol,
            max_subdivisions: 2000,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-10,
            max_subdivisions: 1000,
        }
    }
}

// 15-point Kronrod extension of the 7-point Gauss rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = kronrod.abs();
    let mut fv = [(0.0, 0.0); 7];
    for (j, node) in XGK.iter().take(7).enumerate() {
        let dx = half * node;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    if !kronrod.is_finite() {
        return Err(SpecFunError::Domain("integrand is not finite on the interval"));
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let scale = half.abs();
    let value = kronrod * half;
    let res_abs = res_abs * scale;
    let res_asc = res_asc * scale;

    // QUADPACK error rescaling
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Segment {
        lo,
        hi,
        value,
        error,
    })
}

/// Globally adaptive 15-point Gauss–Kronrod quadrature of `f` over
/// `[lo, hi]`; `hi` may be `+∞`, handled with `x = lo + t / (1 - t)`.
///
/// Succeeds once the summed error estimate is within
/// `max(abs_tol, rel_tol |result|)`. Running out of subdivisions returns
/// [`SpecFunError::NotConverged`] with the best estimate.
pub fn adaptive_quad<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if lo.is_nan() || hi.is_nan() || !lo.is_finite() || hi == f64::NEG_INFINITY {
        return Err(SpecFunError::Domain("quadrature needs finite lo and hi > -inf"));
    }
    if hi == f64::INFINITY {
        let g = |t: f64| {
            let s = 1.0 - t;
            f(lo + t / s) / (s * s)
        };
        return integrate_finite(&g, 0.0, 1.0, spec);
    }
    if hi < lo {
        return integrate_finite(&f, hi, lo, spec).map(|v| -v);
    }
    if hi == lo {
        return Ok(0.0);
    }
    integrate_finite(&f, lo, hi, spec)
}

fn integrate_finite<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let mut segments = vec![gauss_kronrod(f, lo, hi)?];
    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(total);
        }
        if segments.len() >= spec.max_subdivisions {
            return Err(SpecFunError::NotConverged {
                estimate: total,
                iterations: segments.len(),
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.lo + seg.hi);
        if mid <= seg.lo || mid >= seg.hi {
            // interval cannot be split any further in f64
            return Err(SpecFunError::NotConverged {
                estimate: total,
                iterations: segments.len() + 1,
            });
        }
        segments.push(gauss_kronrod(f, seg.lo, mid)?);
        segments.push(gauss_kronrod(f, mid, seg.hi)?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn simple_integrals() {
        let spec = QuadratureSpec::default();
        assert_relative_eq!(
            adaptive_quad(|x| (-x).exp(), 0.0, f64::INFINITY, &spec).unwrap(),
            1.0,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            adaptive_quad(|x| x * x, 0.0, 1.0, &spec).unwrap(),
            1.0 / 3.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            adaptive_quad(|x| x * x, 1.0, 0.0, &spec).unwrap(),
            -1.0 / 3.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn slowly_decaying_exponential_moment() {
        let zeta = 3.1831e-3;
        let v = adaptive_quad(
            |w| w * (-zeta * w).exp(),
            0.0,
            f64::INFINITY,
            &QuadratureSpec::relative(1e-10),
        )
        .unwrap();
        assert_relative_eq!(v, 1.0 / (zeta * zeta), max_relative = 1e-8);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let v = adaptive_quad(|x| x.powf(-0.5), 0.0, 1.0, &QuadratureSpec::relative(1e-9)).unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-8);
    }

    #[test]
    fn reports_non_convergence_with_estimate() {
        let spec = QuadratureSpec::new(1e-15, 1e-15, 2).unwrap();
        match adaptive_quad(|x| (50.0 * x).sin(), 0.0, 3.0, &spec) {
            Err(SpecFunError::NotConverged { estimate, .. }) => assert!(estimate.is_finite()),
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }

    #[test]
    fn invalid_spec() {
        assert!(QuadratureSpec::new(0.0, 1e-8, 10).is_err());
        assert!(QuadratureSpec::new(1e-8, 1e-8, 0).is_err());
    }
}
