use thiserror::Error;

/// Errors raised by the geometry, discretization, linear algebra and Newton layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A retraction or normalization met a (near) zero vector.
    #[error("degenerate update: norm {norm:e} is below the admissible threshold")]
    DegenerateUpdate { norm: f64 },

    /// The linear system has a zero or near-zero pivot.
    #[error("singular system: {0}")]
    SingularSystem(String),

    /// The constraint Jacobian is rank deficient, so the multiplier is not unique.
    #[error("singular constraint Jacobian: {0}")]
    SingularConstraint(String),

    /// The affine covariant ratio was requested for a vanishing step.
    #[error("zero step: the contraction ratio is undefined for a vanishing Newton step")]
    ZeroStep,

    /// The winding field was evaluated on (or too close to) the polar axis.
    #[error("pole singularity: y1^2 + y2^2 = {rho:e}")]
    PoleSingularity { rho: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
