use thiserror::Error;

/// Failures raised by the numerical kernels.
///
/// Precondition violations carry enough context to say which argument was at
/// fault. Numerical failures (`RootNotBracketed`, `NotMonotone`) are kept
/// separate so front ends can map them to a distinct exit status.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("point ({b}, {e}) is outside the classically allowed region; use the Airy turning-point regime")]
    Forbidden { b: f64, e: f64 },

    #[error("quantum number {twice_m}/2 is outside the range allowed for N = {n}")]
    OutOfRange { n: u32, twice_m: i64 },

    #[error("quantum number {twice_m}/2 has the wrong parity for N = {n}")]
    ParityMismatch { n: u32, twice_m: i64 },

    #[error("arrival times coincide ({t}); the branches have merged")]
    MergedBranches { t: f64 },

    #[error("branch sum needs at least one contribution")]
    EmptyBranchSet,

    #[error("{0}")]
    Domain(String),

    #[error("quantization root for level n = {level} is not bracketed by [{lo}, {hi}]")]
    RootNotBracketed { level: usize, lo: f64, hi: f64 },

    #[error("action difference is not monotone increasing on [{lo}, {hi}]")]
    NotMonotone { lo: f64, hi: f64 },
}

impl Error {
    /// True for failures of an iterative numerical method, as opposed to a
    /// caller supplying arguments outside an operation's domain.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::RootNotBracketed { .. } | Error::NotMonotone { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}
