use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = MsdError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum MsdError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("group column must be binary: `{column}` has {found} distinct values")]
    GroupNotBinary { column: String, found: usize },
    #[error("missing value at row {row}, column `{column}`")]
    MissingValue { row: usize, column: String },
    #[error("cannot parse `{value}` at row {row}, column `{column}` as {expected}")]
    Unparseable {
        row: usize,
        column: String,
        value: String,
        expected: &'static str,
    },
    #[error("category `{value}` in column `{column}` was not seen when the encoding was fit")]
    UnknownCategory { column: String, value: String },
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("invalid term: {0}")]
    InvalidTerm(String),
    #[error("infeasible: min_support {min_support} exceeds the {total} available samples")]
    Infeasible { min_support: u64, total: u64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(
        "exhaustive enumeration refused for {n_features} features ({reason}); use solve instead"
    )]
    EnumerationTooLarge { n_features: usize, reason: String },
    #[error("unknown distance `{0}` (expected one of: tv, mmd, msd, mass)")]
    UnknownDistance(String),
    #[error("delta must lie in (0, 1), got {0}")]
    DeltaOutOfRange(f64),
    #[error("ladder size {size} exceeds the {available} available samples")]
    LadderTooLarge { size: usize, available: usize },
    #[error("invalid population: {0}")]
    InvalidPopulation(String),
    #[error("cannot parse subgroup description: {0}")]
    Description(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl MsdError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        MsdError::Io {
            path: path.into(),
            source,
        }
    }
}
