//! Special-function kernels used by the closed-form evaluator.
//!
//! Everything here is a pure function of its arguments. Gamma-family
//! functions are computed in log space where magnitudes get extreme, and the
//! public surface exposes plain, scaled and log variants side by side.
//!
//! Hypergeometric series share one stopping rule: the series ends once the
//! next term is below `1e-16` of the partial sum and at least five terms have
//! been accumulated. Hitting [`MAX_SERIES_TERMS`] is an accuracy error, never
//! a silently truncated value.

mod gamma;
mod hyper;
mod quad;

pub use gamma::{
    digamma, exp_scaled_upper_gamma, gamma, ln_beta, ln_gamma, ln_upper_incomplete_gamma,
    rgamma, sin_pi, upper_incomplete_gamma,
};
pub use hyper::{hyp1f1, hyp2f1, hyp2f1_regularized, hyp3f2_regularized};
pub use quad::{adaptive_quad, QuadratureSpec};

use thiserror::Error;

/// Hard cap on the number of terms any series may sum.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// Relative size of the next term at which a series is considered converged.
pub const SERIES_TOL: f64 = 1e-16;

/// Minimum number of terms summed before the stopping rule may fire.
pub const MIN_SERIES_TERMS: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("argument outside domain: {0}")]
    Domain(&'static str),

    #[error("function diverges at this argument: {0}")]
    Divergence(&'static str),

    /// The iteration did not meet its tolerance; `estimate` is the best value
    /// reached.
    #[error("not converged after {iterations} iterations (best estimate {estimate:e})")]
    NotConverged { estimate: f64, iterations: usize },

    /// The argument lies in a regime this implementation does not continue
    /// into. Callers are expected to route to a different evaluation path.
    #[error("closed form unusable here, fall back: {0}")]
    NeedsFallback(&'static str),
}

pub type Result<T> = std::result::Result<T, SpecFunError>;

/// True when `x` is 0, -1, -2, ...
pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Sums a series from its first term and a term-ratio closure.
///
/// `ratio(n)` must return `t_{n+1} / t_n`. A term that is exactly zero ends
/// the sum (terminating series).
pub(crate) fn sum_series<F>(first: f64, mut ratio: F) -> Result<f64>
where
    F: FnMut(usize) -> f64,
{
    let mut term = first;
    let mut sum = first;
    if first == 0.0 {
        return Ok(0.0);
    }
    for n in 0..MAX_SERIES_TERMS {
        term *= ratio(n);
        if term == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if !sum.is_finite() {
            return Err(SpecFunError::NotConverged {
                estimate: sum,
                iterations: n + 1,
            });
        }
        if n + 2 >= MIN_SERIES_TERMS && term.abs() < SERIES_TOL * sum.abs() {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NotConverged {
        estimate: sum,
        iterations: MAX_SERIES_TERMS,
    })
}
