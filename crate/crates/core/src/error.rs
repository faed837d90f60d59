//! Error types shared across the crate.

use thiserror::Error;

/// A ratio certificate for `k <= 5` came back violated. The bound is proved
/// for that range, so this can only mean an implementation bug; the violating
/// certificate is carried along for diagnosis.
#[derive(Debug, Clone, Error)]
#[error(
    "ratio m(T_{k},W)/m(S_{k},W) = {ratio} fell below 2^-({k}+1) = {threshold} \
     for k = {k} <= 5 (m_Tk = {m_tk}, m_Sk = {m_sk}); this contradicts a proved \
     bound and indicates an internal bug"
)]
pub struct LemmaViolation {
    pub k: u32,
    pub m_tk: String,
    pub m_sk: String,
    pub ratio: String,
    pub threshold: String,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("value matrix is not symmetric at ({row},{col})")]
    NonSymmetric { row: usize, col: usize },

    #[error("value at ({row},{col}) is {value}, outside [0,1]")]
    OutOfRangeEntry {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("bad block weights: {reason}")]
    BadWeights { reason: String },

    #[error("dimension mismatch: {reason}")]
    DimensionMismatch { reason: String },

    #[error("epsilon {eps} outside [0,1)")]
    EpsOutOfRange { eps: String },

    #[error("epsilon {eps} outside the rate formula domain (0, 2/5)")]
    EpsOutOfDomain { eps: String },

    #[error("computation needs {required} terms but the budget allows {allowed}")]
    BudgetExceeded { required: u128, allowed: u128 },

    #[error("graph is not a forest (it contains a cycle)")]
    NotAForest,

    #[error("no closed form: graph is neither a star nor a triangular book")]
    NotClosedForm,

    #[error("invalid graph: {reason}")]
    InvalidGraph { reason: String },

    #[error(transparent)]
    InconsistentWithLemma(#[from] LemmaViolation),

    #[error("invalid optimizer config: {reason}")]
    ConfigInvalid { reason: String },

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("io error on {path}: {reason}")]
    Io { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }
}
