use std::path::PathBuf;

use thiserror::Error;

use crate::circuit::{CircuitReport, GateId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schedule has no start time for gate {0}")]
    MissingGate(GateId),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(Box<CircuitReport>),

    #[error("schedule violates circuit constraints ({overlaps} overlaps, {precedence} precedence violations)")]
    InvalidSchedule { overlaps: usize, precedence: usize },

    #[error("malformed graph6 record: {0}")]
    Graph6(String),

    #[error("{path}:{line}: {message}")]
    GraphFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid weighted graph: {0}")]
    InvalidGraph(String),

    #[error("invalid star instance: {0}")]
    InvalidStar(String),

    #[error("invalid leaf permutation: {0}")]
    InvalidPermutation(String),

    #[error("star gap preconditions do not hold: {0}")]
    GapPrecondition(String),

    #[error("closed-form gap {formula} disagrees with layered - exact = {observed}")]
    GapMismatch { formula: f64, observed: f64 },

    #[error("instance too large for exhaustive search: {orderings} orderings exceeds cap {cap}")]
    TooLarge { orderings: u128, cap: u128 },

    #[error("no records to aggregate")]
    EmptyAggregate,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
