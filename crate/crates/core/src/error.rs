use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not full rank: rank {rank} < {rows} rows")]
    NotFullRank { rank: usize, rows: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("semigroup not pointed by positive grading")]
    NoPositiveGrading,

    #[error("trivial relation: the zero vector gives no box operator")]
    TrivialRelation,

    #[error("no decomposition d = 2r + 3s for d = {0}")]
    NoDecomposition(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("resource limit: more than {limit} S-pairs processed")]
    ResourceLimit { limit: usize },

    #[error("value out of machine range: {0}")]
    Overflow(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
