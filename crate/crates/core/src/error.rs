use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("no data rows")]
    NoDataRows,

    #[error("row {row}, column {column}: cannot parse {value:?} as a number")]
    ParseCell {
        row: usize,
        column: usize,
        value: String,
    },

    #[error("row {row}: expected {expected} columns, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("row {row}: missing class label")]
    MissingLabel { row: usize },

    #[error("label column {0} not found")]
    LabelColumnNotFound(String),

    #[error("instance {index}: feature {feature} is not finite")]
    NonFinite { index: usize, feature: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("class {class:?} has {count} instance(s); at least {required} required")]
    ClassTooSmall {
        class: String,
        count: usize,
        required: usize,
    },

    #[error("training requires at least two classes, found {0}")]
    TooFewClasses(usize),

    #[error("unlabeled instance {0} in training data")]
    UnlabeledTraining(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown class {0:?}")]
    UnknownClass(String),

    #[error("node {0} is not an attached probe")]
    NotAttached(usize),

    #[error("model format: {0}")]
    ModelFormat(String),

    #[error("manifest: {0}")]
    Manifest(String),

    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
