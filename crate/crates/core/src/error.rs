use thiserror::Error;

use crate::specfun::SpecFunError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParam { field: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("degenerate gamma fit: {0}")]
    DegenerateFit(&'static str),

    /// Neither capacity route produced a value.
    #[error("capacity evaluation failed: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
