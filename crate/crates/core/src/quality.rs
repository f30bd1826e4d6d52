//! Weighted Newman-Girvan modularity.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Modularity `Q`, always within `[-1/2, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ModularityValue(pub f64);

impl ModularityValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `Q = sum_c [ W_in(c) / m - (S(c) / 2m)^2 ]`, where `W_in(c)` counts each
/// internal edge and each self-loop once, `S(c)` is the summed member
/// strength and `m` the total edge weight.
pub fn modularity(g: &Graph, partition: &Partition) -> Result<ModularityValue> {
    partition.check_len(g.node_count())?;
    let m = g.total_weight();
    if m <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    // first-appearance labels make the summation order, and hence the exact
    // result, independent of how communities are named
    let canonical = partition.canonical();
    let labels = canonical.labels();
    let k = labels.iter().max().map_or(0, |&l| l + 1);

    let mut internal = vec![0.0; k];
    let mut strength = vec![0.0; k];
    for &(u, v, w) in g.edges() {
        if labels[u] == labels[v] {
            internal[labels[u]] += w;
        }
    }
    for (v, &s) in g.strengths().iter().enumerate() {
        strength[labels[v]] += s;
    }

    let q = internal
        .iter()
        .zip(&strength)
        .map(|(w_in, s)| {
            let share = s / (2.0 * m);
            w_in / m - share * share
        })
        .sum();
    Ok(ModularityValue(q))
}
