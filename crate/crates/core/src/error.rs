use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge list is empty")]
    EmptyInput,
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("node {0} is isolated; a walk cannot leave it")]
    IsolatedNode(usize),
    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("invalid count: {0}")]
    InvalidCount(String),
    #[error("edge index {index} out of range for {n_edges} edges")]
    EdgeIndexOutOfRange { index: usize, n_edges: usize },
    #[error("sparsity {k} invalid for {n} links")]
    InvalidSparsity { k: usize, n: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite input: {0}")]
    NonFiniteInput(String),
    #[error("maximum betweenness is zero; the prior is undefined")]
    ZeroMaxBetweenness,
    #[error("support Gram matrix C11 is singular")]
    SingularC11,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
