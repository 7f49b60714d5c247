use thiserror::Error;

/// Failure modes shared by every module of the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input supplied by the caller.
    #[error("invalid input: {0}")]
    Input(String),
    /// Polynomial text that does not follow the grammar.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// A structural claim (Hilbert function shape, socle dimension, cut length)
    /// failed for the data at hand, typically because a random choice was not general.
    #[error("structural failure: {0}")]
    Structural(String),
    /// A randomised procedure ran out of attempts.
    #[error("undetermined: {0}")]
    Undetermined(String),
    /// An internal consistency assertion failed; this signals a bug.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
