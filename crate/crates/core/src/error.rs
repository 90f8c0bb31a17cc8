use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("rank {rank} out of range for {count} k-sets")]
    RankOutOfRange { rank: u64, count: u64 },
    #[error("set size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid k-set: {0}")]
    InvalidKSet(String),
    #[error("parameter mismatch: ({0}) vs ({1})")]
    ParamMismatch(String, String),
    #[error("invalid shift ({i}, {j}): need 1 <= i < j <= n")]
    InvalidShift { i: usize, j: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("chain is not nested at index {0}")]
    NotNested(usize),
    #[error("expression undefined: {0}")]
    Undefined(String),
    #[error("enumeration aborted after {limit} shifted families")]
    EnumerationCap { limit: u64 },
    #[error("instance too large for {solver}: {detail}")]
    InstanceTooLarge { solver: &'static str, detail: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
