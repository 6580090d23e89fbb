//! Crate-wide error type.

use crate::graph::VertexId;

/// Errors surfaced by construction, parsing, oracles and generators.
///
/// Solver outcomes such as "NO" are never errors; they are [`crate::Answer`]s.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    LoopEdge(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {0}-{1} is not present in the graph")]
    UnknownEdge(VertexId, VertexId),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("the supplied set is not a minimum vertex cover")]
    NotMinimumCover,
    #[error("the supplied set is not an odd cycle transversal")]
    InvalidTransversal,
    #[error("instance is not in 3-by-q form: {0}")]
    NotThreeByQ(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("internal witness verification failed: {0}")]
    WitnessVerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
