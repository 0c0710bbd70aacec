use serde::{Deserialize, Serialize};

use crate::chromatics::{predecessor_set, OrderDag};
use crate::geometry::{Point, Triangulation};
use crate::peeling::{components_of_mask, peel_graph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoreComponents {
    pub max_deg: usize,
    /// Rounds of deletion, `None` for the fixpoint.
    pub rounds: Option<usize>,
    pub vertices: usize,
    pub alive: usize,
    pub components: usize,
    pub largest: usize,
    /// The largest component reaches a convex hull vertex.
    pub largest_touches_hull: bool,
}

fn summarize(tri: &Triangulation, alive: &[bool], max_deg: usize, rounds: Option<usize>) -> CoreComponents {
    let comps = components_of_mask(tri.adjacency(), alive);
    let big = comps.iter().max_by_key(|c| c.size());
    CoreComponents {
        max_deg,
        rounds,
        vertices: tri.len(),
        alive: alive.iter().filter(|&&a| a).count(),
        components: comps.len(),
        largest: big.map_or(0, |c| c.size()),
        largest_touches_hull: big.is_some_and(|c| c.vertices.iter().any(|&v| tri.is_hull(v))),
    }
}

/// Components left after each requested number of synchronous rounds.
pub fn peel_round_components(tri: &Triangulation, max_deg: usize, rounds: &[usize]) -> Vec<CoreComponents> {
    let (levels, _) = peel_graph(tri.adjacency(), None, max_deg, None);
    rounds
        .iter()
        .map(|&m| {
            let alive: Vec<bool> = levels.iter().map(|l| l.peeled().is_none_or(|k| k as usize >= m)).collect();
            summarize(tri, &alive, max_deg, Some(m))
        })
        .collect()
}

/// Components of the core left at the fixpoint.
pub fn core_components(tri: &Triangulation, max_deg: usize) -> CoreComponents {
    let (levels, _) = peel_graph(tri.adjacency(), None, max_deg, None);
    let alive: Vec<bool> = levels.iter().map(|l| l.peeled().is_none()).collect();
    summarize(tri, &alive, max_deg, None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusSurvival {
    pub samples: usize,
    /// `(t, P(radius > t))` on an even grid of `t`.
    pub survival: Vec<(f64, f64)>,
    /// Least-squares slope of `ln P(radius > t)` against `t` over positive
    /// survival values.
    pub log_slope: f64,
}

/// Predecessor radius of each listed vertex.
pub fn predecessor_radii(dag: &OrderDag, points: &[Point], vertices: &[usize]) -> Vec<f64> {
    vertices.iter().map(|&v| predecessor_set(dag, v, points).radius).collect()
}

impl RadiusSurvival {
    pub fn from_radii(radii: &[f64], step: f64) -> Self {
        let n = radii.len().max(1) as f64;
        let max = radii.iter().copied().fold(0.0, f64::max);
        let mut survival = Vec::new();
        let mut t = 0.0;
        while t <= max + step {
            let p = radii.iter().filter(|&&r| r > t).count() as f64 / n;
            survival.push((t, p));
            t += step;
        }
        let pts: Vec<(f64, f64)> = survival.iter().filter(|s| s.1 > 0.0).map(|&(t, p)| (t, p.ln())).collect();
        let k = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let (sxx, sxy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 * p.0, a.1 + p.0 * p.1));
        let den = k * sxx - sx * sx;
        let log_slope = if pts.len() >= 2 && den != 0.0 { (k * sxy - sx * sy) / den } else { 0.0 };
        RadiusSurvival { samples: radii.len(), survival, log_slope }
    }
}
