use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed an argument outside the documented domain.
    #[error("usage: {0}")]
    Usage(String),

    /// Query beyond the sieved range. Tables are immutable; they are never
    /// extended on demand.
    #[error("{value} is beyond the table limit {limit}")]
    BeyondLimit { value: u64, limit: u64 },

    /// Matrix index outside 1..=n.
    #[error("index {index} outside 1..={order}")]
    IndexOutOfRange { index: usize, order: usize },

    /// Building the table would exceed the memory budget.
    #[error("limit {limit} needs {needed} bytes, over the {budget} byte budget")]
    MemoryBudget { limit: u64, needed: u64, budget: u64 },

    /// Malformed table cache file.
    #[error("bad table file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
