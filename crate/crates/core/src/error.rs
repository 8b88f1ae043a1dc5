use thiserror::Error;

/// Errors produced by instance construction and the analytic / numeric
/// routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("oracle energy must be positive and finite, got {0}")]
    NonPositiveEnergy(f64),
    #[error("driving energy must be non-negative, got {0} (use `SearchParams::new_signed` to override)")]
    NegativeDrivingEnergy(f64),
    #[error("driving energy must be finite, got {0}")]
    NonFiniteEnergy(f64),
    #[error("dimension must be at least {need}, got {got}")]
    DimensionTooSmall { got: usize, need: usize },
    #[error("overlap must lie in [0, 1], got {0}")]
    OverlapOutOfRange(f64),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dense Hamiltonian capped at dimension {cap}, got {dim}")]
    DenseCapExceeded { dim: usize, cap: usize },
    #[error("state vector norm {0} is not unit within tolerance")]
    NotUnitNorm(f64),
    #[error("zero or non-finite vector cannot be normalized")]
    ZeroVector,
    #[error("degenerate instance: overlap x = 0 leaves nothing to drive")]
    DegenerateOverlap,
    #[error("mixing angles are defined for epsilon >= 0, got {0}")]
    NegativeEpsilon(f64),
    #[error("large-N asymptote diverges at epsilon = 1")]
    AsymptoteAtUnity,
    #[error("time grid must start at 0 and increase strictly")]
    InvalidTimeGrid,
    #[error("time step must be positive and finite, got {0}")]
    NonPositiveStep(f64),
    #[error("end time must be non-negative and finite, got {0}")]
    NegativeEndTime(f64),
    #[error("step size too large: dt * (E + E') = {product:.6} exceeds {limit}")]
    StepSizeTooLarge { product: f64, limit: f64 },
    #[error("trajectory has no samples")]
    EmptyTrajectory,
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { got: usize, need: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
