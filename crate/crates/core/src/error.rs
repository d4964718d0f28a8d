use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: subsystems need at least two levels")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("subsystem index {index} out of range for a space with {len} factors")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("operator is not Hermitian (max |H - H^dag| = {0:e})")]
    NotHermitian(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error(
        "step size underflow at t = {t:e}: h = {step:e}, error estimate {error:e} \
         after {steps} accepted steps"
    )]
    StepSizeUnderflow { t: f64, step: f64, error: f64, steps: usize },

    #[error("integration exceeded {0} steps")]
    TooManySteps(usize),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("dense dimension {dim} exceeds the limit {limit}; use fewer wells or a smaller truncation")]
    TooLarge { dim: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
