use thiserror::Error;

/// Errors raised by the moment engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested enumeration is larger than the default budget.
    #[error("enumeration budget exceeded: {what} (limit {limit}); {hint}")]
    BudgetExceeded {
        what: String,
        limit: usize,
        hint: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
