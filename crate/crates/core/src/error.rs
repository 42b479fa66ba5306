use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected 42 comma-separated fields, found {found}")]
    MalformedRecord { line: usize, found: usize },

    #[error("line {line}, column {column}: cannot parse {value:?} as a number")]
    Parse {
        line: usize,
        column: usize,
        value: String,
    },

    #[error("unknown attack subcategory {0:?}")]
    UnknownSubcategory(String),

    #[error("unknown category {0:?}")]
    UnknownCategory(String),

    #[error("symbolic column {column}: value {value:?} is not in the fitted vocabulary")]
    UnseenSymbol { column: usize, value: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("class {0:?} has no samples")]
    DegenerateClass(String),

    #[error("fold {fold}: training split has no samples of class {class:?}")]
    DegenerateFold { fold: usize, class: String },

    #[error("non-finite log posterior for class {class} (zero variance with no floor?)")]
    NonFinitePosterior { class: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Whether the error stems from bad arguments rather than bad data.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidArgument(_))
    }
}
