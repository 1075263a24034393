use thiserror::Error;

/// Errors raised by the arithmetic, series and completion routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operands belong to different deformation specs")]
    SpecMismatch,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Raised by the rebase loop; carries the degree of the step that failed
    /// and the coefficient that could not be written in the generator field.
    #[error("not in the completion: coefficient {coeff} at degree {degree} has no preimage")]
    NotInCompletion { degree: i64, coeff: String },

    #[error("not solvable: {0}")]
    NotSolvable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
