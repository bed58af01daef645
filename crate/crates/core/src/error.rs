use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error)]
pub enum VnxError {
    /// The embedding search ran out of node expansions. This never means "no".
    #[error("embedding search exceeded its budget of {budget} node expansions")]
    Budget { budget: u64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown node {0}")]
    UnknownNode(NodeId),

    #[error("unknown edge {0}-{1}")]
    UnknownEdge(NodeId, NodeId),

    #[error("generator: {0}")]
    Generator(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed witness: {0}")]
    MalformedWitness(String),

    #[error("size limit: {0}")]
    SizeLimit(String),

    #[error("unknown word {0}")]
    UnknownWord(usize),

    /// Discovery finished but the host still has room for more nodes.
    #[error("discovery stalled after {discovered} nodes; host lies outside the dictionary's family")]
    CoverageStall { discovered: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = VnxError> = std::result::Result<T, E>;
