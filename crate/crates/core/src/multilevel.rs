//! Multilevel modularity optimization: ordered local moving followed by
//! aggregation of communities into super-nodes, repeated until no node moves.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::ordering::{natural_order, NodeOrder};
use crate::partition::Partition;
use crate::quality::modularity;

const DETACHED: usize = usize::MAX;

/// Working state of local moving on one graph level.
#[derive(Debug, Clone)]
pub struct CommunityState<'g> {
    graph: &'g Graph,
    community: Vec<usize>,
    /// Internal weight per community, internal edges and loops counted once.
    internal: Vec<f64>,
    /// Summed member strength per community.
    total: Vec<f64>,
    m: f64,
}

impl<'g> CommunityState<'g> {
    /// Every node in its own community, community id = node id.
    pub fn singletons(graph: &'g Graph) -> Self {
        let n = graph.node_count();
        Self {
            graph,
            community: (0..n).collect(),
            internal: (0..n).map(|v| graph.self_loop_weight(v)).collect(),
            total: graph.strengths().to_vec(),
            m: graph.total_weight(),
        }
    }

    /// Starts from an arbitrary partition; community ids are its canonical labels.
    pub fn from_partition(graph: &'g Graph, partition: &Partition) -> Result<Self> {
        partition.check_len(graph.node_count())?;
        let community = partition.canonical().into_labels();
        let k = community.iter().max().map_or(0, |&c| c + 1);
        let mut internal = vec![0.0; k];
        let mut total = vec![0.0; k];
        for &(u, v, w) in graph.edges() {
            if community[u] == community[v] {
                internal[community[u]] += w;
            }
        }
        for (v, &s) in graph.strengths().iter().enumerate() {
            total[community[v]] += s;
        }
        Ok(Self {
            graph,
            community,
            internal,
            total,
            m: graph.total_weight(),
        })
    }

    pub fn community_of(&self, v: NodeId) -> Option<usize> {
        Some(self.community[v]).filter(|&c| c != DETACHED)
    }

    pub fn community_count(&self) -> usize {
        self.total.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.m
    }

    pub fn community_internal_weight(&self) -> &[f64] {
        &self.internal
    }

    pub fn community_total_strength(&self) -> &[f64] {
        &self.total
    }

    pub fn node_strength(&self, v: NodeId) -> f64 {
        self.graph.strengths()[v]
    }

    /// Weight from `v` to members of `c`, excluding `v`'s self-loop.
    fn weight_to(&self, v: NodeId, c: usize) -> f64 {
        self.graph
            .neighbors(v)
            .iter()
            .filter(|&&(u, _)| u != v && self.community[u] == c)
            .map(|&(_, w)| w)
            .sum()
    }

    /// Takes `v` out of its community, leaving it detached.
    pub fn remove(&mut self, v: NodeId) {
        let c = self.community[v];
        if c == DETACHED {
            return;
        }
        let k_in = self.weight_to(v, c);
        self.apply_remove(v, c, k_in);
    }

    fn apply_remove(&mut self, v: NodeId, c: usize, k_in: f64) {
        self.internal[c] -= k_in + self.graph.self_loop_weight(v);
        self.total[c] -= self.graph.strengths()[v];
        self.community[v] = DETACHED;
    }

    /// Puts a detached `v` into community `c`.
    pub fn insert(&mut self, v: NodeId, c: usize) -> Result<()> {
        if c >= self.total.len() {
            return Err(Error::UnknownCommunity(c));
        }
        if self.community[v] != DETACHED {
            return Err(Error::InvalidInput(format!("node {v} is not detached")));
        }
        let k_in = self.weight_to(v, c);
        self.apply_insert(v, c, k_in);
        Ok(())
    }

    fn apply_insert(&mut self, v: NodeId, c: usize, k_in: f64) {
        self.internal[c] += k_in + self.graph.self_loop_weight(v);
        self.total[c] += self.graph.strengths()[v];
        self.community[v] = c;
    }

    /// Modularity change from inserting detached `v` into `target`:
    /// `k_in / m - total(target) * k_v / (2 m^2)`.
    pub fn modularity_gain(&self, v: NodeId, target: usize) -> Result<f64> {
        if target >= self.total.len() {
            return Err(Error::UnknownCommunity(target));
        }
        if self.community[v] != DETACHED {
            return Err(Error::InvalidInput(format!("node {v} is not detached")));
        }
        if self.m == 0.0 {
            return Ok(0.0);
        }
        let k_in = self.weight_to(v, target);
        let k_v = self.graph.strengths()[v];
        Ok(k_in / self.m - self.total[target] * k_v / (2.0 * self.m * self.m))
    }

    /// Modularity of the current assignment, from the cached aggregates.
    pub fn modularity(&self) -> f64 {
        let two_m = 2.0 * self.m;
        self.internal
            .iter()
            .zip(&self.total)
            .map(|(w_in, tot)| w_in / self.m - (tot / two_m) * (tot / two_m))
            .sum()
    }

    pub fn partition(&self) -> Partition {
        Partition::new(self.community.clone())
    }
}

/// Outcome of one local-moving pass.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalMoves {
    pub partition: Partition,
    pub improved: bool,
    /// Modularity change of every accepted move, in order.
    pub gains: Vec<f64>,
}

fn check_order(g: &Graph, order: &NodeOrder) -> Result<()> {
    if order.is_permutation_of(g.node_count()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "order is not a permutation of the graph's nodes".into(),
        ))
    }
}

/// Sweeps nodes in `order`, moving each into the neighboring community with
/// the largest modularity gain. Staying wins ties; remaining ties are broken
/// uniformly at random. Only strictly improving moves are taken, and sweeps
/// repeat until one makes no move.
pub fn local_moving<R: Rng + ?Sized>(
    g: &Graph,
    order: &NodeOrder,
    rng: &mut R,
) -> Result<LocalMoves> {
    check_order(g, order)?;
    let n = g.node_count();
    let mut state = CommunityState::singletons(g);
    let mut gains = Vec::new();
    if state.m == 0.0 {
        return Ok(LocalMoves {
            partition: state.partition(),
            improved: false,
            gains,
        });
    }
    let two_m = 2.0 * state.m;
    let denom = two_m * state.m;

    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut best: Vec<usize> = Vec::new();

    loop {
        let mut moved = false;
        for &v in &order.sequence {
            let former = state.community[v];
            touched.clear();
            for &(u, w) in g.neighbors(v) {
                if u == v {
                    continue;
                }
                let c = state.community[u];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += w;
            }
            let k_v = g.strengths()[v];
            state.apply_remove(v, former, link[former]);

            // gains scaled by 2m^2; exact in floating point for integer weights
            let score = |c: usize, link: &[f64], state: &CommunityState| {
                two_m * link[c] - state.total[c] * k_v
            };
            let stay = score(former, &link, &state);
            let mut top = stay;
            best.clear();
            touched.sort_unstable();
            for &c in &touched {
                if c == former {
                    continue;
                }
                let s = score(c, &link, &state);
                if s > top {
                    top = s;
                    best.clear();
                    best.push(c);
                } else if s == top && s > stay {
                    best.push(c);
                }
            }

            let target = match best.len() {
                0 => former,
                1 => best[0],
                len => best[rng.random_range(0..len)],
            };
            state.apply_insert(v, target, link[target]);
            if target != former {
                moved = true;
                gains.push((top - stay) / denom);
            }
            for &c in &touched {
                link[c] = 0.0;
            }
            link[former] = 0.0;
        }
        if !moved {
            break;
        }
    }

    Ok(LocalMoves {
        partition: state.partition(),
        improved: !gains.is_empty(),
        gains,
    })
}

/// Collapses each community into one node. Crossing weights are summed onto
/// the edge between the two super-nodes; internal weight becomes a self-loop.
/// Returns the new graph and the node -> super-node map.
pub fn aggregate(g: &Graph, partition: &Partition) -> Result<(Graph, Vec<usize>)> {
    partition.check_len(g.node_count())?;
    let map = partition.canonical().into_labels();
    let k = map.iter().max().map_or(0, |&c| c + 1);
    let mut weights: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for &(u, v, w) in g.edges() {
        let (a, b) = (map[u].min(map[v]), map[u].max(map[v]));
        *weights.entry((a, b)).or_insert(0.0) += w;
    }
    let edges = weights.into_iter().map(|((a, b), w)| (a, b, w)).collect();
    let graph = Graph::with_loops(k, edges)?;
    Ok((graph, map))
}

/// One level of a multilevel run.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelTrace {
    pub node_count: usize,
    /// Modularity of singleton super-nodes on this level, recomputed from scratch.
    pub start_q: f64,
    /// Modularity after local moving on this level, recomputed from scratch.
    pub end_q: f64,
    pub gains: Vec<f64>,
    /// Partition of the original nodes after this level's moves.
    pub induced: Partition,
}

#[derive(Debug, Clone)]
pub struct MultilevelTrace {
    pub partition: Partition,
    pub levels: Vec<LevelTrace>,
    /// Graph of the last level, on which no move improved modularity.
    pub final_graph: Graph,
}

/// Multilevel optimization returning the final partition of `g`'s nodes.
/// `order` drives the first level only; coarser levels use natural order.
pub fn multilevel<R: Rng + ?Sized>(g: &Graph, order: &NodeOrder, rng: &mut R) -> Result<Partition> {
    multilevel_traced(g, order, rng).map(|t| t.partition)
}

/// [`multilevel`] with per-level bookkeeping for invariant checks.
pub fn multilevel_traced<R: Rng + ?Sized>(
    g: &Graph,
    order: &NodeOrder,
    rng: &mut R,
) -> Result<MultilevelTrace> {
    check_order(g, order)?;
    let has_edges = g.total_weight() > 0.0;
    let q = |graph: &Graph, p: &Partition| -> Result<f64> {
        if has_edges {
            Ok(modularity(graph, p)?.value())
        } else {
            Ok(0.0)
        }
    };

    let mut level_graph = g.clone();
    let mut level_order = order.clone();
    // original node -> node of the current level graph
    let mut to_level: Vec<usize> = (0..g.node_count()).collect();
    let mut levels = Vec::new();

    loop {
        let start_q = q(&level_graph, &Partition::singletons(level_graph.node_count()))?;
        let moves = local_moving(&level_graph, &level_order, rng)?;
        let end_q = q(&level_graph, &moves.partition)?;
        let induced = Partition::new(
            to_level
                .iter()
                .map(|&s| moves.partition.label(s))
                .collect(),
        )
        .canonical();
        levels.push(LevelTrace {
            node_count: level_graph.node_count(),
            start_q,
            end_q,
            gains: moves.gains,
            induced: induced.clone(),
        });
        if !moves.improved {
            return Ok(MultilevelTrace {
                partition: induced,
                levels,
                final_graph: level_graph,
            });
        }
        let (next, map) = aggregate(&level_graph, &moves.partition)?;
        to_level.iter_mut().for_each(|s| *s = map[*s]);
        level_order = natural_order(next.node_count());
        level_graph = next;
    }
}

/// Largest modularity gain available from moving any single node of `g` out
/// of its community in `partition` into another (possibly empty) community.
/// A partition is move-stable when this is not positive.
pub fn best_single_move_gain(g: &Graph, partition: &Partition) -> Result<f64> {
    let base = CommunityState::from_partition(g, partition)?;
    let k = base.community_count();
    let mut best = f64::NEG_INFINITY;
    for v in 0..g.node_count() {
        let mut state = base.clone();
        let home = state.community[v];
        state.remove(v);
        let stay = state.modularity_gain(v, home)?;
        for c in 0..k {
            if c != home {
                best = best.max(state.modularity_gain(v, c)? - stay);
            }
        }
        // moving to a fresh empty community gains nothing absolute
        best = best.max(-stay);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::{random_order, RngSeed};

    fn two_triangles() -> Graph {
        Graph::new(
            6,
            vec![
                (0, 1, 1.0),
                (1, 2, 1.0),
                (0, 2, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (3, 5, 1.0),
            ],
        )
        .unwrap()
    }

    fn barbell() -> Graph {
        let mut edges = two_triangles().edges().to_vec();
        edges.push((2, 3, 1.0));
        Graph::new(6, edges).unwrap()
    }

    #[test]
    fn gain_without_links_is_non_positive() {
        let g = barbell();
        let mut state = CommunityState::singletons(&g);
        state.remove(0);
        let gain = state.modularity_gain(0, 5).unwrap();
        let expected = -(state.community_total_strength()[5] * 2.0) / (2.0 * 49.0);
        assert!((gain - expected).abs() < 1e-15);
        assert!(gain <= 0.0);
    }

    #[test]
    fn k2_gain_is_one_half() {
        let g = Graph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let mut state = CommunityState::singletons(&g);
        assert_eq!(state.modularity(), -0.5);
        state.remove(0);
        assert_eq!(state.modularity_gain(0, 1).unwrap(), 0.5);
        state.insert(0, 1).unwrap();
        assert_eq!(state.modularity(), 0.0);
    }

    #[test]
    fn empty_target_for_edgeless_node() {
        let g = Graph::new(3, vec![(0, 1, 1.0)]).unwrap();
        let mut state = CommunityState::singletons(&g);
        state.remove(2);
        state.remove(1);
        assert_eq!(state.community_total_strength()[1], 0.0);
        assert_eq!(state.modularity_gain(2, 1).unwrap(), 0.0);
    }

    #[test]
    fn gain_errors() {
        let g = Graph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let mut state = CommunityState::singletons(&g);
        assert!(matches!(
            state.modularity_gain(0, 1),
            Err(Error::InvalidInput(_))
        ));
        state.remove(0);
        assert!(matches!(
            state.modularity_gain(0, 2),
            Err(Error::UnknownCommunity(2))
        ));
        assert!(matches!(state.insert(0, 7), Err(Error::UnknownCommunity(7))));
    }

    #[test]
    fn local_moving_examples() {
        let g = two_triangles();
        for seed in 0..10 {
            let mut rng = RngSeed(seed).rng();
            let order = random_order(6, &mut rng);
            let moves = local_moving(&g, &order, &mut rng).unwrap();
            assert!(moves.improved);
            assert_eq!(moves.partition.canonical().labels(), &[0, 0, 0, 1, 1, 1]);
            assert!(best_single_move_gain(&g, &moves.partition).unwrap() <= 1e-12);
        }

        let single = Graph::new(1, vec![]).unwrap();
        let moves = local_moving(&single, &natural_order(1), &mut RngSeed(0).rng()).unwrap();
        assert!(!moves.improved);
        assert_eq!(moves.partition.labels(), &[0]);

        let k2 = Graph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let moves = local_moving(&k2, &natural_order(2), &mut RngSeed(0).rng()).unwrap();
        assert_eq!(moves.partition.community_count(), 1);
        assert_eq!(moves.gains, vec![0.5]);
    }

    #[test]
    fn aggregate_examples() {
        let g = barbell();
        let (same, map) = aggregate(&g, &Partition::singletons(6)).unwrap();
        assert_eq!(map, (0..6).collect::<Vec<_>>());
        assert_eq!(same.node_count(), 6);
        assert_eq!(same.strengths(), g.strengths());
        assert_eq!(same.total_weight(), g.total_weight());

        let tri = Graph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let (one, _) = aggregate(&tri, &Partition::new(vec![0; 3])).unwrap();
        assert_eq!(one.node_count(), 1);
        assert_eq!(one.self_loop_weight(0), 3.0);

        let (two, map) = aggregate(&g, &Partition::new(vec![5, 5, 5, 2, 2, 2])).unwrap();
        assert_eq!(map, vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(two.edges(), &[(0, 0, 3.0), (0, 1, 1.0), (1, 1, 3.0)]);

        assert!(matches!(
            aggregate(&g, &Partition::singletons(2)),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn aggregation_preserves_modularity() {
        let g = barbell();
        let p = Partition::new(vec![0, 0, 1, 1, 2, 2]);
        let (agg, _) = aggregate(&g, &p).unwrap();
        let before = modularity(&g, &p).unwrap().value();
        let after = modularity(&agg, &Partition::singletons(agg.node_count()))
            .unwrap()
            .value();
        assert!((before - after).abs() < 1e-12);
    }

    #[test]
    fn multilevel_two_triangles() {
        let g = two_triangles();
        let p = multilevel(&g, &natural_order(6), &mut RngSeed(3).rng()).unwrap();
        assert_eq!(p.canonical().labels(), &[0, 0, 0, 1, 1, 1]);
        let q = modularity(&g, &p).unwrap().value();
        assert!((q - 2.0 * (3.0 / 6.0 - 0.25)).abs() < 1e-12);
    }

    #[test]
    fn multilevel_edgeless_graph() {
        let g = Graph::new(3, vec![]).unwrap();
        let p = multilevel(&g, &natural_order(3), &mut RngSeed(0).rng()).unwrap();
        assert_eq!(p.community_count(), 3);
    }

    #[test]
    fn cached_state_matches_recomputation() {
        let g = crate::graph::ring_lattice(crate::graph::LatticeParams { n: 20, nei: 2 }).unwrap();
        let p = Partition::new((0..20).map(|v| v / 5).collect());
        let state = CommunityState::from_partition(&g, &p).unwrap();
        let q = modularity(&g, &p).unwrap().value();
        assert!((state.modularity() - q).abs() < 1e-12);
        let total: f64 = state.community_total_strength().iter().sum();
        assert!((total - 2.0 * state.total_weight()).abs() < 1e-12);
    }
}
