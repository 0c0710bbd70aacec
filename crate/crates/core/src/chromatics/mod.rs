//! Proper colorings of Voronoi maps: the deterministic six-coloring driven
//! by peeling levels, the randomized symbol-based scheme, and the
//! one-dimensional three-coloring.

mod randomized;
mod line;
mod order;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub use randomized::{
    color_randomized, color_randomized_with_symbols, draw_symbols, four_color_component, RandomizedColoring,
    RandomizedConfig, DEFAULT_COMPONENT_CAP, DEFAULT_NODE_BUDGET,
};
pub use line::{color_1d, color_1d_lengths, sample_line, CellInterval1D, LineColoring, LineTie, BLUE, GREEN, RED};
pub use order::{
    build_order_dag, clean_closure, color_deterministic, det6, predecessor_set, AreaOrder, Det6, OrderDag,
    PredecessorSet,
};

/// Least nonnegative integer missing from `set`.
pub fn mex(set: impl IntoIterator<Item = u32>) -> u32 {
    let mut seen: u64 = 0;
    let mut large = Vec::new();
    for c in set {
        if c < 64 {
            seen |= 1 << c;
        } else {
            large.push(c);
        }
    }
    if seen != u64::MAX {
        return seen.trailing_ones();
    }
    large.sort_unstable();
    large.dedup();
    let mut m = 64;
    for c in large {
        if c != m {
            break;
        }
        m += 1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme")]
pub enum Scheme {
    #[serde(rename = "DET6")]
    Det6,
    #[serde(rename = "RAND_KOZMA")]
    RandKozma {
        #[serde(rename = "numSymbols")]
        num_symbols: u32,
    },
    #[serde(rename = "ONE_DIM3")]
    OneDim3,
}

impl Scheme {
    /// Colors the scheme may use.
    pub fn palette_size(&self) -> usize {
        match self {
            Scheme::Det6 => 6,
            Scheme::RandKozma { num_symbols } => 3 * *num_symbols as usize + 1,
            Scheme::OneDim3 => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub scheme: Scheme,
}

impl Coloring {
    pub fn palette_size(&self) -> usize {
        self.scheme.palette_size()
    }

    pub fn max_color(&self) -> Option<u32> {
        self.colors.iter().copied().max()
    }

    pub fn within_palette(&self) -> bool {
        self.colors.iter().all(|&c| (c as usize) < self.palette_size())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperReport {
    pub ok: bool,
    pub checked_vertices: usize,
    pub checked_edges: usize,
    /// Edges `(u, v)`, `u < v`, inside the subset with equal colors.
    pub violations: Vec<(usize, usize)>,
}

/// Scans every edge with both endpoints in `subset` (all vertices if `None`).
pub fn verify_proper(colors: &[u32], adj: &Graph, subset: Option<&[bool]>) -> ProperReport {
    let inside = |v: usize| subset.is_none_or(|s| s[v]);
    let mut violations = Vec::new();
    let mut checked_edges = 0;
    for (u, v) in adj.edges() {
        if inside(u) && inside(v) {
            checked_edges += 1;
            if colors[u] == colors[v] {
                violations.push((u, v));
            }
        }
    }
    ProperReport {
        ok: violations.is_empty(),
        checked_vertices: (0..adj.len()).filter(|&v| inside(v)).count(),
        checked_edges,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn mex_values() {
        assert_eq!(mex([]), 0);
        assert_eq!(mex([0, 1, 2]), 3);
        assert_eq!(mex([1, 3]), 0);
        assert_eq!(mex([2, 0, 0, 1]), 3);
        assert_eq!(mex((0..70).filter(|&c| c != 66)), 66);
        assert_eq!(mex(0..64), 64);
    }

    #[test]
    fn properness_on_triangle() {
        let k3 = fixtures::complete(3);
        assert!(verify_proper(&[0, 1, 2], &k3, None).ok);
        let bad = verify_proper(&[0, 0, 1], &k3, None);
        assert_eq!(bad.violations, vec![(0, 1)]);
        assert!(verify_proper(&[0, 0, 1], &k3, Some(&[true, false, true])).ok);
    }

    #[test]
    fn palettes() {
        assert_eq!(Scheme::RandKozma { num_symbols: 2 }.palette_size(), 7);
        assert_eq!(Scheme::RandKozma { num_symbols: 3 }.palette_size(), 10);
        let json = serde_json::to_string(&Scheme::RandKozma { num_symbols: 2 }).unwrap();
        assert_eq!(json, r#"{"scheme":"RAND_KOZMA","numSymbols":2}"#);
    }
}
