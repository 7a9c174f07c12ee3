use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("collision: distance {distance:e} to a primary is below the limit")]
    Collision { distance: f64 },

    #[error("no section crossing within {steps} steps")]
    NoCrossing { steps: usize },

    #[error("crossing refinement stagnated with residual {residual:e}")]
    Stagnation { residual: f64 },

    #[error("step count {steps} exceeds max_steps {max}")]
    StepOverflow { steps: u64, max: u64 },

    #[error("point {index} coincides with the parameterization center")]
    PointAtCenter { index: usize },

    #[error("angle increments change winding direction at step {index}")]
    NonMonotoneWinding { index: usize },

    #[error("singular Jacobian at step {step}: stretch {stretch:e}")]
    Singular { step: usize, stretch: f64 },

    #[error("too few usable points: need {needed}, have {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("outside the small-perturbation regime: N|k.drho| = {value:e} >= 0.1")]
    Regime { value: f64 },

    #[error("argument {0:e} outside the supported range")]
    Range(f64),

    #[error("{0} is not supported for this system")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerics (as opposed to bad configuration).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. }
                | Error::Collision { .. }
                | Error::NoCrossing { .. }
                | Error::Stagnation { .. }
                | Error::StepOverflow { .. }
                | Error::PointAtCenter { .. }
                | Error::NonMonotoneWinding { .. }
                | Error::Singular { .. }
                | Error::TooFewPoints { .. }
                | Error::Regime { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRealError {
    text: String,
}

impl ParseRealError {
    pub(crate) fn new(text: &str) -> Self {
        ParseRealError { text: text.to_owned() }
    }
}

impl fmt::Display for ParseRealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as a real number", self.text)
    }
}

impl std::error::Error for ParseRealError {}

impl From<ParseRealError> for Error {
    fn from(e: ParseRealError) -> Self {
        Error::InvalidInput(e.to_string())
    }
}
