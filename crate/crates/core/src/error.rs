use thiserror::Error;

/// Errors raised by the library. Budget exhaustion is kept distinct from
/// wrong input so callers can report "inconclusive" separately from failure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("degenerate sample persisted after {attempts} attempts: {what}")]
    Degenerate { what: String, attempts: usize },

    #[error("genericity guard failed: {0}")]
    GenericityGuard(String),

    #[error("enumeration cap exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
