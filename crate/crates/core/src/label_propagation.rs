//! Ordered asynchronous label propagation.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::ordering::NodeOrder;
use crate::partition::Partition;

pub const DEFAULT_MAX_SWEEPS: usize = 1000;

/// Total edge weight from `v` to each neighboring label. `v`'s own label only
/// appears if `v` has a self-loop.
pub fn neighbor_label_weights(
    g: &Graph,
    v: NodeId,
    labels: &Partition,
) -> Result<BTreeMap<usize, f64>> {
    if v >= g.node_count() {
        return Err(Error::IndexOutOfRange {
            index: v,
            node_count: g.node_count(),
        });
    }
    labels.check_len(g.node_count())?;
    Ok(tally(g, v, labels.labels()))
}

fn tally(g: &Graph, v: NodeId, labels: &[usize]) -> BTreeMap<usize, f64> {
    let mut weights = BTreeMap::new();
    for &(u, w) in g.neighbors(v) {
        *weights.entry(labels[u]).or_insert(0.0) += w;
    }
    weights
}

/// Labels of maximal total weight, in ascending label order.
fn dominant_labels(weights: &BTreeMap<usize, f64>) -> Vec<usize> {
    let best = weights.values().copied().fold(f64::NEG_INFINITY, f64::max);
    weights
        .iter()
        .filter(|&(_, &w)| w == best)
        .map(|(&l, _)| l)
        .collect()
}

/// Runs label propagation from unique labels, visiting nodes in `order` every
/// sweep. A node keeps its label while that label is among the heaviest in its
/// neighborhood; otherwise it takes one of the heaviest labels uniformly at
/// random. Stops after the first sweep with no change.
///
/// Fails with [`Error::LabelsNotStable`], carrying the last labels, if
/// `max_sweeps` sweeps all changed something.
pub fn label_propagation<R: Rng + ?Sized>(
    g: &Graph,
    order: &NodeOrder,
    rng: &mut R,
    max_sweeps: usize,
) -> Result<Partition> {
    let n = g.node_count();
    if !order.is_permutation_of(n) {
        return Err(Error::InvalidInput(
            "order is not a permutation of the graph's nodes".into(),
        ));
    }
    let mut labels: Vec<usize> = (0..n).collect();

    for _ in 0..max_sweeps {
        let mut changed = false;
        for &v in &order.sequence {
            let weights = tally(g, v, &labels);
            if weights.is_empty() {
                continue;
            }
            let dominant = dominant_labels(&weights);
            if dominant.contains(&labels[v]) {
                continue;
            }
            let pick = if dominant.len() == 1 {
                dominant[0]
            } else {
                dominant[rng.random_range(0..dominant.len())]
            };
            labels[v] = pick;
            changed = true;
        }
        if !changed {
            return Ok(Partition::new(labels));
        }
    }
    Err(Error::LabelsNotStable {
        sweeps: max_sweeps,
        last: Partition::new(labels),
    })
}

/// True when every node's label is among the heaviest labels around it.
pub fn is_stable(g: &Graph, partition: &Partition) -> bool {
    (0..g.node_count()).all(|v| {
        let weights = tally(g, v, partition.labels());
        weights.is_empty() || dominant_labels(&weights).contains(&partition.label(v))
    })
}
