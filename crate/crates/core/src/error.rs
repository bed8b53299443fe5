use thiserror::Error;

/// Errors produced by the quadratic cardioid operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QcError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("mean direction is undefined for the uniform distribution")]
    UndefinedDirection,
    #[error("both radii are positive; not a cardioid")]
    NotReducible,
    #[error("uniform distribution: every angle is stationary")]
    DegenerateUniform,
    #[error("moments do not define a nonnegative density (minimum {min_density:e})")]
    NotAMeasure { min_density: f64 },
    #[error("moments define a measure with no quadratic cardioid representation")]
    NotRepresentableAsQC,
    #[error("mixture weight {0} outside [0, 1]")]
    InvalidWeight(f64),
    #[error("sample count must be at least 1")]
    InvalidCount,
    #[error("empty sample")]
    EmptySample,
    #[error("at least 5 observations are required, got {0}")]
    TooFewObservations(usize),
    #[error("moments could not be fitted even after perturbation")]
    Unfittable,
}

impl QcError {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            QcError::InvalidParams(_) => "InvalidParams",
            QcError::UndefinedDirection => "UndefinedDirection",
            QcError::NotReducible => "NotReducible",
            QcError::DegenerateUniform => "DegenerateUniform",
            QcError::NotAMeasure { .. } => "NotAMeasure",
            QcError::NotRepresentableAsQC => "NotRepresentableAsQC",
            QcError::InvalidWeight(_) => "InvalidWeight",
            QcError::InvalidCount => "InvalidCount",
            QcError::EmptySample => "EmptySample",
            QcError::TooFewObservations(_) => "TooFewObservations",
            QcError::Unfittable => "Unfittable",
        }
    }
}

pub type Result<T> = std::result::Result<T, QcError>;
