//! Performance engine for RIS-assisted high-altitude-platform networks in
//! blocked urban environments.
//!
//! Two independent routes to the same numbers:
//!
//! * [`analytic`]: distance moments, gamma moment matching of the signal and
//!   interference powers, a generalized Beta prime SIR law, and from it
//!   coverage probability and ergodic capacity.
//! * [`montecarlo`]: per-trial resampling of Poisson HAP/RIS fields and the
//!   Boolean building field, Rician fading, and the resulting SIR.
//!
//! [`cli`] wires both into sweeps with CSV/JSON output; [`specfun`] holds the
//! numerical kernels underneath.
//!
//! ```
//! use rishap::analytic::AnalyticModel;
//! use rishap::geometry::SystemParams;
//!
//! let params = SystemParams { num_re: 256, ..SystemParams::default() };
//! let model = AnalyticModel::new(&params).unwrap();
//! let pc = model.coverage(1.0).unwrap(); // 0 dB threshold
//! assert!(pc > 0.7 && pc < 0.9);
//! ```

pub mod analytic;
pub mod channel;
pub mod cli;
mod error;
pub mod geometry;
pub mod montecarlo;
pub mod specfun;

pub use error::{Error, Result};
