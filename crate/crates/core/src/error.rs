use std::path::PathBuf;

use thiserror::Error;

use crate::neighbors::ExclusionRule;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error at row {row}: {message}")]
    Csv { row: usize, message: String },

    #[error("row {row} has {found} columns, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("row {row}, column {column}: cannot parse {value:?} as a finite number")]
    BadCell {
        row: usize,
        column: usize,
        value: String,
    },

    #[error("row {row}, column {column}: empty cell")]
    EmptyCell { row: usize, column: usize },

    #[error("label column {column} does not exist (rows have {width} columns)")]
    MissingLabelColumn { column: usize, width: usize },

    #[error("dataset needs at least 2 instances, got {0}")]
    TooFewInstances(usize),

    #[error("dataset needs at least one feature column")]
    NoFeatures,

    #[error("instance {row} has {found} features, expected {expected}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("{labels} labels for {rows} instances")]
    LabelCountMismatch { rows: usize, labels: usize },

    #[error("feature value at instance {row}, feature {column} is not finite")]
    NonFinite { row: usize, column: usize },

    #[error("feature subset is empty")]
    EmptySubset,

    #[error("feature index {index} out of range for {dims} features")]
    FeatureOutOfRange { index: usize, dims: usize },

    #[error("feature index {0} appears more than once in the subset")]
    DuplicateFeature(usize),

    #[error("query index {index} out of range for {n} instances")]
    QueryOutOfRange { index: usize, n: usize },

    #[error("no candidate neighbor for instance {query} under rule {rule:?}")]
    EmptyCandidates { query: usize, rule: ExclusionRule },

    #[error("rule {rule:?} does not carry the class of instance {query}")]
    RuleLabelMismatch { query: usize, rule: ExclusionRule },

    #[error("class {label:?} has a single member (instance {instance}); near-hit undefined")]
    SingletonClass { label: String, instance: usize },

    #[error("dataset has a single class; near-miss undefined")]
    SingleClass,

    #[error("invalid hit count: {hits} of {n}")]
    InvalidHitCount { hits: usize, n: usize },

    #[error("reference margin is zero; hybrid ratio undefined")]
    DegenerateReference,

    #[error("negative hypothesis margin {hm} at full separability")]
    InconsistentMargin { hm: f64 },

    #[error("step {position}: {source}")]
    AtPosition {
        position: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("search would evaluate {count} subsets, limit is {limit}")]
    TooManySubsets { count: u128, limit: u128 },
}

impl Error {
    /// True for errors caused by the input data or its layout rather than
    /// by the arithmetic of a measure.
    pub fn is_data_error(&self) -> bool {
        match self {
            Error::Io { .. }
            | Error::Csv { .. }
            | Error::RaggedRow { .. }
            | Error::BadCell { .. }
            | Error::EmptyCell { .. }
            | Error::MissingLabelColumn { .. }
            | Error::TooFewInstances(_)
            | Error::NoFeatures
            | Error::DimensionMismatch { .. }
            | Error::LabelCountMismatch { .. }
            | Error::NonFinite { .. } => true,
            Error::AtPosition { source, .. } => source.is_data_error(),
            _ => false,
        }
    }
}
