use std::fmt;

use koszulkit::error::{AnalysisError, FieldError, PosetError};

/// Failure classes, each with its own exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// A requested assertion or validation failed, or two oracles disagree.
    Failure(String),
    /// Unreadable input, bad flags or an input outside a command's hypotheses.
    Input(String),
    /// A resource guard refused the computation.
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failure(m) => write!(f, "failure: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Guard(m) => write!(f, "refused: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::DegreeTooLarge { .. } | AnalysisError::BoundsExceeded(_) => {
                CliError::Guard(e.to_string())
            }
            AnalysisError::InternalInconsistency(_) => CliError::Failure(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
