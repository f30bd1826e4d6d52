//! Node centrality measures used to build visit orders.
//!
//! Shortest paths use edge length `1 / w`, so heavier edges are "closer".

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Degree,
    PageRank,
    Closeness,
    Betweenness,
    /// Betweenness plus relative closeness.
    Combined,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    pub measure: Measure,
    pub values: Vec<f64>,
}

impl CentralityScores {
    pub fn new(measure: Measure, values: Vec<f64>) -> Self {
        Self { measure, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn degree_scores(g: &Graph) -> CentralityScores {
    CentralityScores::new(Measure::Degree, g.strengths().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tol: 1e-10,
            max_iter: 1000,
        }
    }
}

/// Weighted PageRank by power iteration. A walker at `u` moves to neighbor `v`
/// with probability `w(u, v) / strength(u)`; isolated nodes spread their mass
/// uniformly.
pub fn pagerank_scores(g: &Graph, params: PageRankParams) -> Result<CentralityScores> {
    let n = g.node_count();
    if n == 0 {
        return Ok(CentralityScores::new(Measure::PageRank, Vec::new()));
    }
    let nf = n as f64;
    let PageRankParams {
        damping,
        tol,
        max_iter,
    } = params;
    let strengths = g.strengths();

    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iter {
        let dangling: f64 = (0..n)
            .filter(|&u| strengths[u] == 0.0)
            .map(|u| rank[u])
            .sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        next.fill(base);
        for u in 0..n {
            if strengths[u] == 0.0 {
                continue;
            }
            let share = damping * rank[u] / strengths[u];
            for &(v, w) in g.neighbors(u) {
                // a loop is one adjacency entry but carries 2w of strength
                let w = if v == u { 2.0 * w } else { w };
                next[v] += share * w;
            }
        }
        let delta = rank
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut rank, &mut next);
        if delta <= tol {
            let total: f64 = rank.iter().sum();
            rank.iter_mut().for_each(|r| *r /= total);
            return Ok(CentralityScores::new(Measure::PageRank, rank));
        }
    }
    Err(Error::NoConvergence {
        algorithm: "pagerank",
        iterations: max_iter,
    })
}

/// Heap entry ordered so that `BinaryHeap` pops the smallest distance first.
#[derive(PartialEq)]
struct Candidate {
    dist: f64,
    node: NodeId,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra distances from `src` with edge length `1 / w`. Unreachable nodes
/// get `f64::INFINITY`.
pub fn shortest_distances(g: &Graph, src: NodeId) -> Result<Vec<f64>> {
    let n = g.node_count();
    if src >= n {
        return Err(Error::IndexOutOfRange {
            index: src,
            node_count: n,
        });
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Candidate {
        dist: 0.0,
        node: src,
    });
    while let Some(Candidate { dist: d, node: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in g.neighbors(u) {
            let nd = d + 1.0 / w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Candidate { dist: nd, node: v });
            }
        }
    }
    Ok(dist)
}

/// `1 / sum of distances to every other node`. Requires a connected graph
/// with at least two nodes.
pub fn closeness_scores(g: &Graph) -> Result<CentralityScores> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::DegenerateGraph(n));
    }
    let values = (0..n)
        .into_par_iter()
        .map(|v| {
            let total: f64 = shortest_distances(g, v)?.iter().sum();
            if total.is_finite() {
                Ok(1.0 / snap(total))
            } else {
                Err(Error::DisconnectedGraph)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralityScores::new(Measure::Closeness, values))
}

const SNAP_DROPPED_BITS: u32 = 52 - 36;

/// Rounds `x` to 36 significant bits. Path sums and dependency sums reach the
/// same exact value through different summation orders on different nodes;
/// rounding makes such scores compare equal (e.g. on vertex-transitive
/// graphs) while staying within about 1e-11 relative of the raw value.
pub(crate) fn snap(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    let half = 1u64 << (SNAP_DROPPED_BITS - 1);
    let mask = !((1u64 << SNAP_DROPPED_BITS) - 1);
    // round half up on the magnitude; a carry into the exponent is still correct
    f64::from_bits((x.to_bits() + half) & mask)
}

/// Two path lengths are treated as equal when they agree to within a few ulps
/// relative to their magnitude; sums of reciprocals rarely match bit-for-bit.
pub(crate) fn same_length(a: f64, b: f64) -> bool {
    a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Single-source dependency accumulation (Brandes). Returns, for every node,
/// the sum over targets `t` of `sigma_st(v) / sigma_st`.
fn source_dependencies(g: &Graph, s: NodeId) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0f64; n];
    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut settled = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();

    dist[s] = 0.0;
    sigma[s] = 1.0;
    heap.push(Candidate { dist: 0.0, node: s });
    while let Some(Candidate { dist: d, node: u }) = heap.pop() {
        if settled[u] || d > dist[u] {
            continue;
        }
        settled[u] = true;
        stack.push(u);
        for &(v, w) in g.neighbors(u) {
            if v == u || settled[v] {
                continue;
            }
            let nd = d + 1.0 / w;
            if same_length(nd, dist[v]) {
                sigma[v] += sigma[u];
                preds[v].push(u);
            } else if nd < dist[v] {
                dist[v] = nd;
                sigma[v] = sigma[u];
                preds[v].clear();
                preds[v].push(u);
                heap.push(Candidate { dist: nd, node: v });
            }
        }
    }

    let mut delta = vec![0.0; n];
    while let Some(w) = stack.pop() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
    }
    delta[s] = 0.0;
    delta
}

/// Fractional betweenness over unordered pairs `{s, t}` with `s != v != t`.
/// Disconnected pairs contribute nothing.
pub fn betweenness_scores(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let per_source: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| source_dependencies(g, s))
        .collect();
    // fixed source order keeps the sum bit-stable regardless of scheduling
    let mut values = vec![0.0; n];
    for deps in &per_source {
        for (acc, d) in values.iter_mut().zip(deps) {
            *acc += d;
        }
    }
    // every unordered pair was counted from both endpoints
    values.iter_mut().for_each(|v| *v = snap(*v / 2.0));
    CentralityScores::new(Measure::Betweenness, values)
}

/// Rescales closeness into `(0, 1/2)`: `c / (2 max c + 1)`.
pub fn relative_closeness(clo: &CentralityScores) -> Result<Vec<f64>> {
    if clo.measure != Measure::Closeness {
        return Err(Error::InvalidInput(format!(
            "expected closeness scores, got {:?}",
            clo.measure
        )));
    }
    if let Some(bad) = clo.values.iter().find(|&&c| !(c > 0.0 && c.is_finite())) {
        return Err(Error::InvalidInput(format!(
            "closeness must be positive, got {bad}"
        )));
    }
    let max = clo.values.iter().copied().fold(0.0, f64::max);
    let denom = 2.0 * max + 1.0;
    Ok(clo.values.iter().map(|c| c / denom).collect())
}

/// Betweenness plus relative closeness. Requires a connected graph.
pub fn combined_scores(g: &Graph) -> Result<CentralityScores> {
    let clo = closeness_scores(g)?;
    let rel = relative_closeness(&clo)?;
    let bet = betweenness_scores(g);
    let values = bet.values.iter().zip(&rel).map(|(b, c)| b + c).collect();
    Ok(CentralityScores::new(Measure::Combined, values))
}
