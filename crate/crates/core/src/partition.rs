use std::collections::HashMap;

use crate::error::{Error, Result};

/// Crisp clustering: one community label per node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    pub fn new(labels: Vec<usize>) -> Self {
        Self { labels }
    }

    /// Every node in its own community.
    pub fn singletons(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<usize> {
        self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Relabels communities to `0..k` by order of first appearance.
    pub fn canonical(&self) -> Self {
        let mut remap = HashMap::new();
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                let next = remap.len();
                *remap.entry(l).or_insert(next)
            })
            .collect();
        Self { labels }
    }

    pub fn community_count(&self) -> usize {
        self.canonical().labels.iter().max().map_or(0, |&m| m + 1)
    }

    pub(crate) fn check_len(&self, node_count: usize) -> Result<()> {
        if self.labels.len() != node_count {
            return Err(Error::InvalidPartition(format!(
                "{} labels for {} nodes",
                self.labels.len(),
                node_count
            )));
        }
        Ok(())
    }
}
