use std::path::PathBuf;

use thiserror::Error;

use crate::series::Period;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("row {row}: duplicate timestamp {period}")]
    DuplicateTimestamp { row: usize, period: Period },

    #[error("row {row}: gap in sequence, expected {expected} but found {found}")]
    Gap {
        row: usize,
        expected: Period,
        found: Period,
    },

    #[error("column `{0}` not found")]
    MissingColumn(String),

    #[error("period {period} outside series range {first}..{last}")]
    OutOfRange {
        period: Period,
        first: Period,
        last: Period,
    },

    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("design matrix is rank deficient: column `{column}` is linearly dependent on earlier columns")]
    RankDeficient { column: String },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("document `{doc_id}`: topic probabilities sum to {sum}, expected 1")]
    SumToOne { doc_id: String, sum: f64 },

    #[error("row {row}: probability {value} outside [0, 1]")]
    InvalidProbability { row: usize, value: f64 },

    #[error("no documents in period {0}")]
    EmptyPeriod(Period),

    #[error("topic `{0}` does not occur in the records")]
    UnknownTopic(String),

    #[error("candidate window [{from}, {to}] violates trimming: each regression needs at least {min_obs} observations (at most a 90/10 split at trimming {trimming})")]
    Trimming {
        from: usize,
        to: usize,
        min_obs: usize,
        trimming: f64,
    },

    #[error("segment too small: {segment} segment has {len} observations, need at least {needed}")]
    SegmentTooSmall {
        segment: &'static str,
        len: usize,
        needed: usize,
    },

    #[error("degenerate segments: both sub-sample regressions fit exactly (zero residual sum of squares)")]
    DegenerateSegments,

    #[error("estimation failed at candidate {candidate}: {reason}")]
    Estimation { candidate: usize, reason: String },

    #[error("unsupported significance level {0}; use 0.01, 0.05 or 0.10")]
    UnsupportedAlpha(f64),

    #[error("confidence interval for break {break_index} undefined: {reason}")]
    IntervalUndefined { break_index: usize, reason: String },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    /// True for failures of the numerical procedures themselves as opposed
    /// to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RankDeficient { .. }
                | Error::NonFinite(_)
                | Error::DegenerateSegments
                | Error::Estimation { .. }
                | Error::IntervalUndefined { .. }
        )
    }
}
