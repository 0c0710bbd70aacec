use serde::{Deserialize, Serialize};

use super::{run_trials, Estimate, Z99};
use crate::geometry::{delaunay, sample_poisson, Triangulation, Window};
use crate::{Error, Result};

/// Delaunay edges of length at least `ell` that meet the closed square.
pub fn find_long_edges(tri: &Triangulation, square: &Window, ell: f64) -> Vec<(usize, usize)> {
    let pts = tri.vertices();
    tri.edges()
        .filter(|&(u, v)| pts[u].dist(&pts[v]) >= ell && square.intersects_segment(&pts[u], &pts[v]))
        .collect()
}

/// `(sqrt(32) rho / ell + 8)^2 exp(-ell^2 / 32)`.
pub fn long_edge_bound(rho: f64, ell: f64) -> f64 {
    (32f64.sqrt() * rho / ell + 8.0).powi(2) * (-ell * ell / 32.0).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LongEdgeTrial {
    pub seed: u64,
    pub long_edges: usize,
    pub longest: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LongEdgeExperiment {
    pub rho: f64,
    pub ell: f64,
    pub pad: f64,
    /// Frequency of at least one long edge, 99% Wilson interval.
    pub estimate: Estimate,
    pub analytic_bound: f64,
    /// The bound exceeds 1 and says nothing.
    pub vacuous: bool,
    pub consistent: bool,
    pub rows: Vec<LongEdgeTrial>,
}

/// Samples `Q(0, rho)` with a pad of `max(ell, 10)` and looks for edges of
/// length at least `ell` meeting `Q(0, rho)`.
pub fn long_edge_experiment(rho: f64, ell: f64, trials: u64, seed_base: u64) -> Result<LongEdgeExperiment> {
    if !(ell > 0.0 && rho > 0.0) || trials == 0 {
        return Err(Error::param("need rho > 0, ell > 0 and at least one trial"));
    }
    let square = Window::centered(rho)?;
    let pad = ell.max(10.0);
    let rows = run_trials(trials, |i| -> Result<LongEdgeTrial> {
        let seed = seed_base.wrapping_add(i);
        let ps = sample_poisson(square, pad, 1.0, seed)?;
        let tri = delaunay(&ps)?;
        let pts = tri.vertices();
        let longest = tri
            .edges()
            .filter(|&(u, v)| square.intersects_segment(&pts[u], &pts[v]))
            .map(|(u, v)| pts[u].dist(&pts[v]))
            .fold(0.0, f64::max);
        Ok(LongEdgeTrial { seed, long_edges: find_long_edges(&tri, &square, ell).len(), longest })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let hits = rows.iter().filter(|t| t.long_edges > 0).count() as u64;
    let estimate = Estimate::wilson(hits, trials, Z99);
    let analytic_bound = long_edge_bound(rho, ell);
    Ok(LongEdgeExperiment {
        rho,
        ell,
        pad,
        estimate,
        analytic_bound,
        vacuous: analytic_bound > 1.0,
        consistent: analytic_bound > 1.0 || estimate.lo <= analytic_bound,
        rows,
    })
}
