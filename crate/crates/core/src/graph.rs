//! Compressed adjacency lists shared by every graph algorithm in the crate.

use serde::{Deserialize, Serialize};

/// An undirected (or, for rotation systems, cyclically ordered) adjacency
/// structure in CSR form. Vertex ids are `0..len()`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds from per-vertex lists, keeping each list's order.
    pub fn from_lists<L: AsRef<[usize]>>(lists: &[L]) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut targets = Vec::with_capacity(lists.iter().map(|l| l.as_ref().len()).sum());
        offsets.push(0);
        for l in lists {
            targets.extend_from_slice(l.as_ref());
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    /// Builds a simple undirected graph with sorted neighbor lists; self loops
    /// and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut lists = vec![Vec::new(); n];
        for (u, v) in edges {
            if u != v {
                lists[u].push(v);
                lists[v].push(u);
            }
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Self::from_lists(&lists)
    }

    pub fn len(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Number of undirected edges, assuming symmetric lists.
    pub fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }

    /// Undirected edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| {
            self.neighbors(u).iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// Binary search in a sorted neighbor list.
    pub fn has_edge_sorted(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|u| self.neighbors(u).iter().all(|&v| self.neighbors(v).contains(&u)))
    }

    /// Induced subgraph on `subset` (given in the new vertex order); each
    /// neighbor list keeps the order of the original list.
    /// Returns the subgraph and, for each new id, the original id.
    pub fn induced(&self, subset: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &v) in subset.iter().enumerate() {
            local[v] = i;
        }
        let lists: Vec<Vec<usize>> = subset
            .iter()
            .map(|&v| {
                self.neighbors(v).iter().filter_map(|&w| (local[w] != usize::MAX).then(|| local[w])).collect()
            })
            .collect();
        (Graph::from_lists(&lists), subset.to_vec())
    }
}
