//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong when building or running a simulation.
///
/// Numeric payloads are widened to `f64` for display regardless of the
/// working precision.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time {t} outside schedule domain [{t_min}, {t_max}]")]
    ScheduleDomain { t: f64, t_min: f64, t_max: f64 },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("state norm {norm} deviates from unity beyond tolerance")]
    Normalization { norm: f64 },

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("basis dimension {dim} exceeds limit {limit}")]
    BasisTooLarge { dim: usize, limit: usize },

    #[error("photon cutoff {cutoff} too small: this run needs at least {needed}")]
    BasisTooSmall { needed: usize, cutoff: usize },

    #[error("spin index {index} out of range for {count} spins")]
    SpinIndex { index: usize, count: usize },

    #[error("need two distinct spins, got index {0} twice")]
    SameSpin(usize),

    #[error("invalid excitation pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("protocol not applicable: {0}")]
    ProtocolNotApplicable(String),

    #[error("scenario configuration mismatch: {0}")]
    ConfigMismatch(String),

    #[error("empty trajectory")]
    EmptyTrajectory,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
