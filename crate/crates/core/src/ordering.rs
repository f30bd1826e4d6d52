//! Node visit orders: ascending centrality (low-centrality nodes first), plus
//! the random and natural baselines.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centrality::CentralityScores;
use crate::graph::NodeId;

/// Pseudo-random generator used for every randomized step. ChaCha8 is
/// platform independent, so a seed fixes the stream everywhere.
pub type SeededRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> SeededRng {
        SeededRng::seed_from_u64(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Random,
    Natural,
    Degree,
    PageRank,
    Closeness,
    Betweenness,
    Combined,
}

impl Strategy {
    pub const ALL: [Strategy; 7] = [
        Strategy::Random,
        Strategy::Natural,
        Strategy::Degree,
        Strategy::PageRank,
        Strategy::Closeness,
        Strategy::Betweenness,
        Strategy::Combined,
    ];

    /// The five centrality-driven strategies.
    pub const CENTRALITY: [Strategy; 5] = [
        Strategy::Degree,
        Strategy::PageRank,
        Strategy::Closeness,
        Strategy::Betweenness,
        Strategy::Combined,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::Natural => "natural",
            Strategy::Degree => "deg",
            Strategy::PageRank => "pag",
            Strategy::Closeness => "clo",
            Strategy::Betweenness => "bet",
            Strategy::Combined => "my",
        }
    }

    pub fn uses_centrality(self) -> bool {
        !matches!(self, Strategy::Random | Strategy::Natural)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.token() == s)
            .ok_or_else(|| format!("unknown order `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieMode {
    /// Equal scores keep index order.
    #[default]
    Stable,
    /// Equal scores are shuffled uniformly.
    Random,
}

impl TieMode {
    pub fn token(self) -> &'static str {
        match self {
            TieMode::Stable => "stable",
            TieMode::Random => "randomtie",
        }
    }
}

impl fmt::Display for TieMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for TieMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stable" => Ok(TieMode::Stable),
            "randomtie" => Ok(TieMode::Random),
            _ => Err(format!("unknown tie mode `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeOrder {
    pub sequence: Vec<NodeId>,
    pub strategy: Strategy,
    pub tie_mode: TieMode,
}

impl NodeOrder {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn is_permutation_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        self.sequence.len() == n
            && self
                .sequence
                .iter()
                .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    }
}

/// Sorts nodes with `cmp` (stable), then shuffles every run of nodes that
/// compare equal when ties are random.
fn sort_with_ties<F, R>(n: usize, cmp: F, tie_mode: TieMode, rng: &mut R) -> Vec<NodeId>
where
    F: Fn(NodeId, NodeId) -> Ordering,
    R: Rng + ?Sized,
{
    let mut seq: Vec<NodeId> = (0..n).collect();
    seq.sort_by(|&a, &b| cmp(a, b));
    if tie_mode == TieMode::Random {
        for group in seq.chunk_by_mut(|&a, &b| cmp(a, b) == Ordering::Equal) {
            group.shuffle(rng);
        }
    }
    seq
}

fn strategy_for(scores: &CentralityScores) -> Strategy {
    use crate::centrality::Measure;
    match scores.measure {
        Measure::Degree => Strategy::Degree,
        Measure::PageRank => Strategy::PageRank,
        Measure::Closeness => Strategy::Closeness,
        Measure::Betweenness => Strategy::Betweenness,
        Measure::Combined => Strategy::Combined,
    }
}

/// Lowest score first. Scores are compared exactly.
pub fn ascending_order<R: Rng + ?Sized>(
    scores: &CentralityScores,
    tie_mode: TieMode,
    rng: &mut R,
) -> NodeOrder {
    let v = &scores.values;
    let sequence = sort_with_ties(v.len(), |a, b| v[a].total_cmp(&v[b]), tie_mode, rng);
    NodeOrder {
        sequence,
        strategy: strategy_for(scores),
        tie_mode,
    }
}

/// Lexicographic ascending order by (betweenness, closeness). Closeness only
/// decides between nodes whose betweenness is exactly equal.
pub fn ascending_order_combined<R: Rng + ?Sized>(
    bet: &CentralityScores,
    clo: &CentralityScores,
    tie_mode: TieMode,
    rng: &mut R,
) -> NodeOrder {
    let (b, c) = (&bet.values, &clo.values);
    assert_eq!(b.len(), c.len(), "score vectors from different graphs");
    let sequence = sort_with_ties(
        b.len(),
        |x, y| b[x].total_cmp(&b[y]).then_with(|| c[x].total_cmp(&c[y])),
        tie_mode,
        rng,
    );
    NodeOrder {
        sequence,
        strategy: Strategy::Combined,
        tie_mode,
    }
}

pub fn random_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> NodeOrder {
    let mut sequence: Vec<NodeId> = (0..n).collect();
    sequence.shuffle(rng);
    NodeOrder {
        sequence,
        strategy: Strategy::Random,
        tie_mode: TieMode::Random,
    }
}

/// Identity order: nodes in the order they were added.
pub fn natural_order(n: usize) -> NodeOrder {
    NodeOrder {
        sequence: (0..n).collect(),
        strategy: Strategy::Natural,
        tie_mode: TieMode::Stable,
    }
}
