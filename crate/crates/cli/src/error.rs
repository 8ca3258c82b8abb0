use std::fmt;
use std::path::PathBuf;

/// Where a problem was found: a file and, when known, a 1-based line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub file: String,
    pub line: Option<usize>,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{}:{}", self.file, line),
            None => write!(f, "{}", self.file),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{at}: parse error: {msg}")]
    Parse { at: Location, msg: String },
    #[error("{at}: invalid: {source}")]
    Validation {
        at: Location,
        #[source]
        source: dynlog_core::Error,
    },
    #[error("{at}: {msg}")]
    Inconsistent { at: Location, msg: String },
    #[error("missing input: {0}")]
    MissingInput(&'static str),
    #[error(transparent)]
    Core(#[from] dynlog_core::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn parse(file: &str, line: usize, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            at: Location {
                file: file.to_string(),
                line: Some(line),
            },
            msg: msg.into(),
        }
    }

    pub fn invalid(file: &str, line: Option<usize>, source: dynlog_core::Error) -> CliError {
        CliError::Validation {
            at: Location {
                file: file.to_string(),
                line,
            },
            source,
        }
    }

    /// The line number attached to a parse or validation error.
    pub fn line(&self) -> Option<usize> {
        match self {
            CliError::Parse { at, .. } | CliError::Validation { at, .. } | CliError::Inconsistent { at, .. } => {
                at.line
            }
            _ => None,
        }
    }
}
