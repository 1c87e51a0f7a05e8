use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An integer index fell outside `[0, p^k)`.
    #[error("value {value} out of range [0, {bound})")]
    Range { value: u64, bound: u64 },

    /// A value violated a mathematical precondition (non-prime modulus,
    /// digit not reduced, probability outside [0,1], ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Lengths or dimensions of the operands do not agree.
    #[error("shape error: {0}")]
    Shape(String),

    /// The requested computation exceeds a configured size cap.
    #[error("capacity exceeded: {what} needs {size} entries, limit is {limit}")]
    Capacity { what: String, size: u128, limit: u128 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("rank-deficient generator: rank {rank} < k = {k}")]
    RankDeficient { rank: usize, k: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
