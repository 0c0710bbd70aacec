use serde::{Deserialize, Serialize};

use crate::geometry::VoronoiCell;
use crate::graph::Graph;

pub const HISTOGRAM_BINS: usize = 100;
pub const HISTOGRAM_MAX: f64 = 4.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaStats {
    pub cells: usize,
    pub mean: f64,
    /// Counts over `[0, HISTOGRAM_MAX)` in equal bins.
    pub histogram: Vec<u64>,
    /// Areas at or above `HISTOGRAM_MAX`.
    pub overflow: u64,
    pub min_gap: f64,
    pub min_gap_pair: Option<(usize, usize)>,
    /// Vertices on the longest path whose areas strictly decrease.
    pub longest_decreasing_path: usize,
    /// Two cells share an area exactly.
    pub degenerate: bool,
}

impl AreaStats {
    /// Empty bins lying between the first and last occupied bin.
    pub fn interior_empty_bins(&self) -> usize {
        interior_empty_bins(&self.histogram)
    }
}

pub(crate) fn interior_empty_bins(h: &[u64]) -> usize {
    let first = h.iter().position(|&c| c > 0);
    let last = h.iter().rposition(|&c| c > 0);
    match (first, last) {
        (Some(a), Some(b)) => h[a..=b].iter().filter(|&&c| c == 0).count(),
        _ => 0,
    }
}

/// Statistics over the uncontaminated cells; `adj` is the Delaunay graph.
pub fn area_statistics(cells: &[VoronoiCell], adj: &Graph) -> AreaStats {
    let clean: Vec<usize> = (0..cells.len()).filter(|&v| !cells[v].contaminated).collect();
    let mut histogram = vec![0u64; HISTOGRAM_BINS];
    let mut overflow = 0;
    for &v in &clean {
        let a = cells[v].area;
        if a >= HISTOGRAM_MAX {
            overflow += 1;
        } else {
            histogram[((a / HISTOGRAM_MAX * HISTOGRAM_BINS as f64) as usize).min(HISTOGRAM_BINS - 1)] += 1;
        }
    }
    let mut by_area = clean.clone();
    by_area.sort_by(|&a, &b| cells[a].area.total_cmp(&cells[b].area));
    let mut min_gap = f64::INFINITY;
    let mut min_gap_pair = None;
    for w in by_area.windows(2) {
        let g = cells[w[1]].area - cells[w[0]].area;
        if g < min_gap {
            min_gap = g;
            min_gap_pair = Some((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    // longest path ending at v, over clean vertices in increasing area
    let mut best = vec![0usize; cells.len()];
    let mut longest = 0;
    for &v in &by_area {
        let a = cells[v].area;
        let prev = adj
            .neighbors(v)
            .iter()
            .filter(|&&w| !cells[w].contaminated && cells[w].area < a)
            .map(|&w| best[w])
            .max()
            .unwrap_or(0);
        best[v] = prev + 1;
        longest = longest.max(best[v]);
    }
    let mean = if clean.is_empty() { 0.0 } else { clean.iter().map(|&v| cells[v].area).sum::<f64>() / clean.len() as f64 };
    AreaStats {
        cells: clean.len(),
        mean,
        histogram,
        overflow,
        min_gap,
        min_gap_pair,
        longest_decreasing_path: longest,
        degenerate: min_gap == 0.0,
    }
}
