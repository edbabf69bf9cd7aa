use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("method role mismatch: {method} is not a {expected} bound")]
    MethodRole {
        method: crate::ln::BoundMethod,
        expected: &'static str,
    },

    #[error("precision exhausted: {0}")]
    Precision(String),

    #[error("precondition refuted: {0}")]
    PreconditionRefuted(String),

    #[error("sequence is not strictly increasing at index {index}: ratio {ratio}")]
    NonIncreasingSequence { index: usize, ratio: String },

    #[error("cannot parse rational {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("replay mismatch: {0}")]
    Replay(String),

    #[error("failed to write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// The message without its category prefix.
    pub fn detail(&self) -> String {
        match self {
            Error::Domain(m) | Error::Precision(m) | Error::PreconditionRefuted(m) | Error::Replay(m) => m.clone(),
            _ => self.to_string(),
        }
    }

    /// Stable identifier used in machine-readable error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "ZeroDenominator",
            Error::Domain(_) => "DomainError",
            Error::MethodRole { .. } => "MethodRoleError",
            Error::Precision(_) => "PrecisionError",
            Error::PreconditionRefuted(_) => "PreconditionRefuted",
            Error::NonIncreasingSequence { .. } => "NonIncreasingSequence",
            Error::Parse { .. } => "ParseError",
            Error::Replay(_) => "ReplayError",
            Error::Write { .. } => "WriteError",
        }
    }
}
