use thiserror::Error;

use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed structural input: bad vertex ids, self-loops, non-trees,
    /// set systems that are not subtrees, invalid interval endpoints.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("size mismatch: {left} tokens vs {right} tokens")]
    Size { left: u64, right: u64 },

    #[error("no token on vertex {0}")]
    Token(Vertex),

    #[error("infeasible configuration: {0}")]
    Feasibility(String),

    #[error("vertex {to} is unreachable from vertex {from}")]
    Unreachable { from: Vertex, to: Vertex },

    /// A caller broke an operation's documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("instance exceeds oracle scale: {0}")]
    OracleScale(String),

    #[error("state cap of {0} configurations exceeded")]
    CapExceeded(usize),

    /// Something that the algorithm's correctness argument rules out.
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
