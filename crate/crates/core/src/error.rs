use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the inputs does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration exceeded its node budget before finishing.
    #[error("node budget of {budget} exhausted after visiting {visited} nodes ({progress})")]
    ResourceLimit { budget: u64, visited: u64, progress: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
