use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("bad header: expected `{expected}`, found `{found}`")]
    Header { expected: String, found: String },

    /// A data row failed to parse or violated a field invariant. `row` is
    /// 1-based and counts data rows only (the header is not a row).
    #[error("row {row}, column {column}: {message}")]
    Row {
        row: usize,
        column: &'static str,
        message: String,
    },

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("degenerate feature `{0}`: zero variance over the training set")]
    DegenerateFeature(&'static str),

    #[error("split of {n} samples at fraction {fraction} leaves an empty side")]
    EmptySplit { n: usize, fraction: f64 },

    #[error("missing target `{target}` in row {row}")]
    MissingTarget { row: usize, target: &'static str },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("singular design matrix (rank deficient) and no ridge fallback")]
    Singular,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dataset too small: {0}")]
    TooSmall(String),

    #[error("model format version: {0}")]
    Version(String),

    #[error("corrupted model payload: {0}")]
    Corrupt(String),

    #[error("target mismatch: model predicts {model}, requested {requested}")]
    TargetMismatch {
        model: &'static str,
        requested: &'static str,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
