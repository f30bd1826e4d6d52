//! Weighted undirected graphs, the edge-list text format, and the ring-lattice
//! generator.
//!
//! Nodes are dense indices `0..n`. Every edge carries a strictly positive
//! weight. Self-loops are only produced by community aggregation; input graphs
//! and generated lattices never contain them.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// An undirected weighted edge `(u, v, w)`.
pub type Edge = (NodeId, NodeId, f64);

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, f64)>>,
    strengths: Vec<f64>,
    total_weight: f64,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects out-of-range endpoints,
    /// non-positive weights, duplicate undirected pairs and self-loops.
    pub fn new(node_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if let Some(&(u, _, _)) = edges.iter().find(|(u, v, _)| u == v) {
            return Err(Error::SelfLoop(u));
        }
        Self::with_loops(node_count, edges)
    }

    /// Like [`Graph::new`] but accepts at most one self-loop per node.
    /// Aggregated community graphs are built this way.
    pub fn with_loops(node_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); node_count];
        let mut strengths = vec![0.0; node_count];
        let mut total_weight = 0.0;

        for &(u, v, w) in &edges {
            for index in [u, v] {
                if index >= node_count {
                    return Err(Error::IndexOutOfRange { index, node_count });
                }
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::NonPositiveWeight { u, v, weight: w });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge { u, v });
            }
            if u == v {
                adjacency[u].push((u, w));
                strengths[u] += 2.0 * w;
            } else {
                adjacency[u].push((v, w));
                adjacency[v].push((u, w));
                strengths[u] += w;
                strengths[v] += w;
            }
            total_weight += w;
        }

        Ok(Self {
            node_count,
            edges,
            adjacency,
            strengths,
            total_weight,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with edge weights. A self-loop appears once, as `(v, w)`.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.adjacency[v]
    }

    /// Sum of incident edge weights; a self-loop of weight `w` counts `2w`.
    pub fn strength(&self, v: NodeId) -> Result<f64> {
        self.strengths
            .get(v)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index: v,
                node_count: self.node_count,
            })
    }

    pub fn strengths(&self) -> &[f64] {
        &self.strengths
    }

    /// Total edge weight `m`, self-loops counted once.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn self_loop_weight(&self, v: NodeId) -> f64 {
        self.adjacency[v]
            .iter()
            .find(|&&(u, _)| u == v)
            .map_or(0.0, |&(_, w)| w)
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == self.node_count
    }

    /// Connected component id of every node, numbered by lowest member.
    pub fn components(&self) -> Vec<usize> {
        let mut component = vec![usize::MAX; self.node_count];
        let mut next = 0;
        for start in 0..self.node_count {
            if component[start] != usize::MAX {
                continue;
            }
            component[start] = next;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if component[v] == usize::MAX {
                        component[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        component
    }

    /// Serializes to the edge-list format. The leading `# nodes: N` comment
    /// lets trailing isolated nodes survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# nodes: {}", self.node_count);
        for &(u, v, w) in &self.edges {
            let _ = writeln!(out, "{u} {v} {w}");
        }
        out
    }
}

/// Parses the whitespace-separated edge-list format: one `u v [w]` per line,
/// `#` starts a comment, weight defaults to 1.0 and the node count is one more
/// than the largest id. A `# nodes: N` comment raises the node count to `N`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut node_count = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (content, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
            None => (raw, None),
        };
        if let Some(declared) = comment.and_then(node_count_hint) {
            node_count = node_count.max(declared);
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `u v [w]`, found {} fields", tokens.len()),
            });
        }
        let parse_node = |tok: &str| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid node id `{tok}`"),
            })
        };
        let u = parse_node(tokens[0])?;
        let v = parse_node(tokens[1])?;
        let w = match tokens.get(2) {
            Some(tok) => tok.parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid weight `{tok}`"),
            })?,
            None => 1.0,
        };
        node_count = node_count.max(u + 1).max(v + 1);
        edges.push((u, v, w));
    }

    Graph::new(node_count, edges)
}

fn node_count_hint(comment: &str) -> Option<usize> {
    comment
        .trim()
        .strip_prefix("nodes:")
        .and_then(|rest| rest.trim().parse().ok())
}

/// Watts-Strogatz parameters restricted to rewiring probability `p = 0` and
/// lattice dimension `dim = 1`, i.e. a plain ring lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeParams {
    pub n: usize,
    pub nei: usize,
}

impl LatticeParams {
    pub const REWIRING_PROBABILITY: f64 = 0.0;
    pub const DIMENSION: usize = 1;

    pub fn new(n: usize, nei: usize) -> Result<Self> {
        // nei < n/2 without integer division truncation
        if n < 3 || nei == 0 || 2 * nei >= n {
            return Err(Error::InvalidParams { n, nei });
        }
        Ok(Self { n, nei })
    }
}

/// Circulant ring lattice: node `i` links to `(i + j) mod n` for `j = 1..=nei`,
/// all with unit weight. Edges are emitted in node order, so the natural node
/// order is the order nodes were added.
pub fn ring_lattice(params: LatticeParams) -> Result<Graph> {
    let LatticeParams { n, nei } = LatticeParams::new(params.n, params.nei)?;
    let edges = (0..n)
        .flat_map(|i| (1..=nei).map(move |j| (i, (i + j) % n, 1.0)))
        .collect();
    Graph::new(n, edges)
}
