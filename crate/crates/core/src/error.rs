use thiserror::Error;

/// Errors raised by constructors, certificate builders and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("not a unit-interval map: {0}")]
    NotUnitInterval(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("direction mismatch: {0}; apply `reverse` to one side so both translate the same way")]
    DirectionMismatch(String),

    #[error("search for {what} exceeded the bound {bound}")]
    SearchExhausted { what: String, bound: u64 },

    #[error("step budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("cover construction failed: {0}")]
    Cover(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
