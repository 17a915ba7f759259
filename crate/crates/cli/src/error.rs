use std::io;
use std::path::PathBuf;

use modpk_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("overflow: {0}")]
    Overflow(String),
    /// The computation does not apply to this input (for example no cubic roots).
    #[error("{0}")]
    NotApplicable(String),
    #[error("{0}")]
    Domain(CoreError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotApplicable(_) | CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Overflow(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidPrime(_) | CoreError::ZeroPrecision | CoreError::InvalidPrecision { .. } => {
                CliError::Usage(e.to_string())
            }
            CoreError::ModulusOverflow { .. } | CoreError::OutOfRange => CliError::Overflow(e.to_string()),
            CoreError::NoCubicRoots(_) => CliError::NotApplicable(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
