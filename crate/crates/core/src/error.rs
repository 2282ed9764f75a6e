use thiserror::Error;

/// Malformed textual or JSON input for intervals and areas.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error("infinite bounds cannot be closed")]
    ClosedInfinity,
    #[error("empty interval {0}")]
    EmptyInterval(String),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("cube has {found} factors, expected {expected}")]
    WrongArity { expected: usize, found: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("axis list must be nonempty and free of duplicates")]
    BadAxes,
    #[error("covers do not describe the given area")]
    CoverMismatch,
}
