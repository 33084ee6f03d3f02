use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Contract` marks a violated precondition (caller error),
/// `InternalConsistency` marks an exactness assertion that failed inside a
/// computation (a bug, never a data condition), and `Unsupported` marks an
/// operation outside the implemented parameter range.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
