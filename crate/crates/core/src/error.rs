use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to parse JSON: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("unknown drop id `{0}`")]
    UnknownDrop(String),

    #[error("drop `{0}` has no partition assigned")]
    Unassigned(String),

    #[error("drop `{id}` demands {demand} which exceeds capacity {capacity}")]
    InfeasibleDrop {
        id: String,
        demand: crate::ResourceVector,
        capacity: crate::ResourceVector,
    },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("graph of {size} vertices exceeds the exhaustive search limit of {limit}")]
    SizeGuard { size: usize, limit: usize },

    #[error("antichain weights overflow the flow capacity range")]
    WeightOverflow,

    #[error("invalid cluster count {m} for {partitions} partitions")]
    InvalidClusterCount { m: usize, partitions: usize },

    #[error("solution does not match graph: {0}")]
    SolutionMismatch(String),
}
