use thiserror::Error;

/// Errors raised by graph construction, parsing and the search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A graph would need more vertices than a single 64-bit row can hold.
    #[error("graph needs {needed} vertices, at most {max} supported")]
    Capacity { needed: usize, max: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller-supplied object does not satisfy the documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A lookup table is missing an entry the computation depends on.
    #[error("missing mi table entry for order {order}")]
    MissingEntry { order: usize },

    #[error("n = {n} exceeds the generation budget of {limit} for family {family}")]
    Budget {
        n: usize,
        limit: usize,
        family: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
