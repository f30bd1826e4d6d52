use thiserror::Error;

use crate::partition::Partition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("node index {index} out of range for graph with {node_count} nodes")]
    IndexOutOfRange { index: usize, node_count: usize },

    #[error("edge ({u}, {v}) has non-positive or non-finite weight {weight}")]
    NonPositiveWeight { u: usize, v: usize, weight: f64 },

    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("self-loop on node {0} is not allowed in input graphs")]
    SelfLoop(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid lattice parameters n={n}, nei={nei}: need n >= 3 and 1 <= nei < n/2")]
    InvalidParams { n: usize, nei: usize },

    #[error("{algorithm} did not converge within {iterations} iterations")]
    NoConvergence {
        algorithm: &'static str,
        iterations: usize,
    },

    #[error("label propagation did not stabilise within {sweeps} sweeps")]
    LabelsNotStable { sweeps: usize, last: Partition },

    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("graph needs at least 2 nodes, got {0}")]
    DegenerateGraph(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown community {0}")]
    UnknownCommunity(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("graph has zero total edge weight")]
    EmptyGraph,
}
