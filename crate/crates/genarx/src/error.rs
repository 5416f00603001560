//! Crate-wide error type.
//!
//! Variants are grouped by the stage that raises them: parameter
//! validation, data handling, and numerical estimation/recovery. The
//! grouping drives the CLI exit codes (see [`Error::exit_code`]).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("parameters are not underdamped: 2T = {two_t} must exceed H*R = {hr}")]
    NotUnderdamped { two_t: f64, hr: f64 },

    #[error("damping factor D = {0} is not supported by the estimation formulas; set D = 0")]
    DampingUnsupported(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("sampling interval folds the damped frequency: omega*h = {product} >= pi (omega = {omega}, h = {h})")]
    FoldedSampling { omega: f64, h: f64, product: f64 },

    #[error("sampling intervals differ: {left} vs {right}")]
    SamplingMismatch { left: f64, right: f64 },

    #[error("time series is empty")]
    EmptySeries,

    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("{context}: need at least {needed} samples, got {got}")]
    TooFewSamples {
        context: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("malformed row {row}: {reason}")]
    MalformedRow { row: usize, reason: String },

    #[error("timestamps not strictly increasing at row {row}")]
    NonMonotoneTime { row: usize },

    #[error("irregular sampling at index {index}: interval {got} deviates from median {median} by more than 1%")]
    IrregularSampling { index: usize, got: f64, median: f64 },

    #[error("pre-event window too short: need at least {needed} samples, got {got}")]
    WindowTooShort { needed: usize, got: usize },

    #[error("no event found: |du| never exceeds threshold {threshold}")]
    NoEventFound { threshold: f64 },

    #[error("regression matrix is rank deficient: effective rank {rank} < {cols} columns (no excitation?)")]
    RankDeficient { rank: usize, cols: usize },

    #[error("arccos argument {arg} lies outside [-1, 1]; coefficients violate the principal-branch contract")]
    BranchViolation { arg: f64 },

    #[error("recovered parameters are non-physical: {reason}")]
    NonPhysical { reason: String },

    #[error("degenerate coefficients: {reason}")]
    DegenerateCoefficients { reason: String },

    #[error("recovery system is singular: {reason}")]
    SingularRecovery { reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit-code class used by the CLI: 2 configuration, 3 data, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            NonPositiveParameter { .. } | NotUnderdamped { .. } | DampingUnsupported(_)
            | Config(_) => 2,
            SamplingMismatch { .. } | EmptySeries | NonFiniteSample { .. }
            | TooFewSamples { .. } | LengthMismatch { .. } | MissingColumn(_)
            | MalformedRow { .. } | NonMonotoneTime { .. } | IrregularSampling { .. }
            | WindowTooShort { .. } | NoEventFound { .. } | Io(_) | Csv(_) | Json(_) => 3,
            FoldedSampling { .. } | RankDeficient { .. } | BranchViolation { .. }
            | NonPhysical { .. } | DegenerateCoefficients { .. } | SingularRecovery { .. } => 4,
        }
    }
}
