use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: edge weight must be positive, got {weight}")]
    NonPositiveWeight { line: usize, weight: f64 },

    #[error("empty input")]
    EmptyInput,

    #[error("modularity undefined for edgeless graph")]
    EdgelessGraph,

    #[error("no edges")]
    NoEdges,

    #[error("vertex {vertex} out of range for graph with {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },

    #[error("community {community} is not adjacent to vertex {vertex}")]
    NotAdjacent { vertex: usize, community: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("partitions cover different vertex sets: {0}")]
    MismatchedVertexSets(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
