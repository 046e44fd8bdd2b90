use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid site index {index} (ground space has {size} sites)")]
    InvalidSite { index: usize, size: usize },

    #[error("weight of site {site} must be strictly positive, got {value}")]
    NonPositiveWeight { site: usize, value: f64 },

    #[error("duplicate site label {0:?}")]
    DuplicateLabel(String),

    #[error("kernel matrix is not symmetric: max |M - M^T| = {0:e}")]
    Asymmetric(f64),

    #[error("spectral violation for {family} statistics: eigenvalue {eigenvalue}")]
    Spectrum { family: String, eigenvalue: f64 },

    #[error("cap overflow: {0}")]
    CapOverflow(String),

    #[error("guard exceeded: {0}")]
    Guard(String),

    #[error("not a correlation measure of a point process within caps: minimum probability {min:e}")]
    NotRealizable { min: f64 },

    #[error("boson distribution divergent: spectral radius {0} >= 1")]
    BosonDivergent(f64),

    #[error("windows must be mutually disjoint")]
    OverlappingWindows,

    #[error("operator family does not commute: residual {0:e}")]
    NonCommuting(f64),

    #[error("simultaneous diagonalization failed: {0}")]
    Diagonalization(String),

    #[error("tail mass {0:e} too heavy for table sampling")]
    HeavyTail(f64),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
