//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the library.
///
/// The harness maps these onto process exit codes: configuration problems
/// exit with 2, data/numeric/analysis problems with 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A learner was used before `init` or in an inconsistent state.
    #[error("learner state: {0}")]
    State(String),

    /// Hint/gradient messages arrived out of protocol order.
    #[error("protocol order: {0}")]
    ProtocolOrder(String),

    /// Invalid experiment configuration (bad flag, incompatible combination).
    #[error("configuration: {0}")]
    Config(String),

    /// Non-finite or otherwise unusable numeric data.
    #[error("data: {0}")]
    Data(String),

    /// Post-hoc analysis could not be carried out (e.g. too few points).
    #[error("analysis: {0}")]
    Analysis(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
