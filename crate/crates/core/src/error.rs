use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} outside alphabet of rank {rank}")]
    Alphabet { index: i64, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("matrix index ({i}, {j}) invalid for dimension {dim}")]
    MatrixIndex { i: usize, j: usize, dim: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("generator x{0} has no assigned matrix")]
    Unassigned(u32),

    #[error("cannot parse word: {0}")]
    Parse(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
