use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("unbounded polyhedron: {0}")]
    Unbounded(String),

    #[error("empty polytope: {0}")]
    Empty(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration budget exceeded: {needed} candidate points > {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Dimension(_) => 2,
            Error::Consistency(_) => 3,
            Error::Unbounded(_) | Error::Empty(_) | Error::Domain(_) | Error::Budget { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
