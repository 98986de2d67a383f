//! Error type shared by every operation in this crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Failures surfaced by covariance-matrix construction and analysis.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The vectorized Lyapunov system is rank-deficient, which signals an
    /// unstable or degenerate drift matrix.
    #[error("singular system: the vectorized Lyapunov equation has no unique solution")]
    SingularSystem,

    /// A matrix required to be positive definite failed its Cholesky
    /// factorization.
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    /// An input violates a mathematical precondition (range, physicality,
    /// stability, or a nonpositive logarithm argument).
    #[error("domain error: {0}")]
    DomainError(String),

    /// A 4x4 matrix handed to the standard-form reader deviates from the
    /// sparse (x, y, z, -z) pattern by more than the tolerance.
    #[error(
        "pattern mismatch: off-pattern deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    PatternMismatch { deviation: f64, tolerance: f64 },

    /// A mode index passed to a reduction is repeated or out of range.
    #[error("mode index out of range: {index} not valid for {n_modes} modes")]
    IndexOutOfRange { index: usize, n_modes: usize },

    /// The requested maximum-work bound does not exist for these variances.
    #[error("maximum work undefined for variances x={x}, y={y}")]
    MaxWorkUndefined { x: f64, y: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::DomainError(msg.into())
    }
}
