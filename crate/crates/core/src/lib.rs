//! Community detection with centrality-ordered node visits.
//!
//! Label propagation and multilevel modularity optimization both visit nodes
//! one at a time, and the visit order changes the communities they find. This
//! crate ranks nodes by a centrality measure and visits the least central
//! first. Besides weighted degree, PageRank, closeness and betweenness it
//! offers a combined ranking: betweenness, with closeness deciding between
//! nodes of equal betweenness.
//!
//! [`bench`] measures the resulting modularity on ring lattices, and
//! [`cli`] wraps it as the `ordbench` command.

pub mod bench;
pub mod centrality;
pub mod cli;
pub mod error;
pub mod graph;
pub mod label_propagation;
pub mod multilevel;
pub mod ordering;
pub mod partition;
pub mod quality;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, ring_lattice, Graph, LatticeParams, NodeId};
pub use ordering::{NodeOrder, RngSeed, Strategy, TieMode};
pub use partition::Partition;
pub use quality::{modularity, ModularityValue};
