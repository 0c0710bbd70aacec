use serde::{Deserialize, Serialize};

use super::squares::{CliqueCover, SquareClass};
use super::{find_long_edges, run_trials, Estimate, Z95};
use crate::geometry::{delaunay, sample_poisson, Point, Triangulation, Window};
use crate::peeling::{peel_to_core, Level, PeelConfig};
use crate::{Error, Result};

/// Extra margin sampled beyond `Q(0, 3R + L)` by the experiments.
const SAMPLE_PAD: f64 = 5.0;

/// Tiling of `Q(0, 3R)` by `m x m` boxes of side `r_used`, with `m` odd so a
/// box is centered at the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tiling {
    pub r_nominal: f64,
    pub m: usize,
    pub r_used: f64,
    /// Set when `6R / r_nominal` was not already an odd integer.
    pub adjustment: Option<String>,
}

impl Tiling {
    pub fn new(big_r: f64) -> Self {
        let r_nominal = big_r.cbrt();
        let raw = 6.0 * big_r / r_nominal;
        let k = ((raw - 1.0) / 2.0).round().max(0.0);
        let m = 2 * k as usize + 1;
        let r_used = 6.0 * big_r / m as f64;
        let adjustment = ((raw - m as f64).abs() > 1e-9)
            .then(|| format!("6R/r = {raw:.6} rounded to {m}; box side {r_nominal:.6} -> {r_used:.6}"));
        Tiling { r_nominal, m, r_used, adjustment }
    }

    /// Box containing `p`, using half-open boxes except on the far edges.
    pub fn box_of(&self, big_r: f64, p: &Point) -> Option<(usize, usize)> {
        let idx = |c: f64| -> Option<usize> {
            if c.abs() > 3.0 * big_r {
                return None;
            }
            Some((((c + 3.0 * big_r) / self.r_used).floor() as usize).min(self.m - 1))
        };
        Some((idx(p.x)?, idx(p.y)?))
    }

    pub fn box_square(&self, big_r: f64, i: usize, j: usize) -> Window {
        let c = |k: usize| -3.0 * big_r + (k as f64 + 0.5) * self.r_used;
        Window { center: Point::new(c(i), c(j)), half_side: self.r_used / 2.0, inner_radius: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaReport {
    #[serde(rename = "R")]
    pub big_r: f64,
    /// `ln R`.
    pub l: f64,
    /// `R^(1/3)`.
    pub r: f64,
    pub tiling: Tiling,
    pub omega: [bool; 5],
    pub long_edges: usize,
    pub rare_boxes: usize,
    pub max_box_count: usize,
    pub heavy_boxes: usize,
    pub annulus_count: usize,
    pub annulus_area: f64,
    /// Restricted-core vertices left in `Q(0, R)`.
    pub core_survivors: usize,
    pub peel_rounds: usize,
}

/// Evaluates the five events for one triangulation whose sample window
/// covers `Q(0, 3R + L)`.
pub fn omega_report(tri: &Triangulation, sample_window: &Window, big_r: f64) -> Result<OmegaReport> {
    omega_report_rounds(tri, sample_window, big_r, None)
}

fn omega_report_rounds(
    tri: &Triangulation,
    sample_window: &Window,
    big_r: f64,
    max_rounds: Option<usize>,
) -> Result<OmegaReport> {
    if !(big_r > 1.0 && big_r.is_finite()) {
        return Err(Error::param(format!("R must exceed 1, got {big_r}")));
    }
    let l = big_r.ln();
    let need = Window::centered(3.0 * big_r + l)?;
    let covers = sample_window.inner_radius.is_none()
        && sample_window.min_x() <= need.min_x()
        && sample_window.max_x() >= need.max_x()
        && sample_window.min_y() <= need.min_y()
        && sample_window.max_y() >= need.max_y();
    if !covers {
        return Err(Error::contract(format!("sample window does not cover Q(0, {:.4})", 3.0 * big_r + l)));
    }
    let pts = tri.vertices();
    let tiling = Tiling::new(big_r);
    let inner = Window::centered(3.0 * big_r)?;

    let long_edges = find_long_edges(tri, &inner, l).len();

    let cover = CliqueCover::new(tri);
    let m = tiling.m;
    let mut rare_boxes = 0;
    for i in 0..m {
        for j in 0..m {
            if cover.classify(tri, &tiling.box_square(big_r, i, j)) == SquareClass::Rare {
                rare_boxes += 1;
            }
        }
    }

    let mut counts = vec![0usize; m * m];
    let mut annulus_count = 0;
    let outer = 3.0 * big_r + l;
    for p in pts {
        if let Some((i, j)) = tiling.box_of(big_r, p) {
            counts[j * m + i] += 1;
        } else if p.x.abs().max(p.y.abs()) <= outer {
            annulus_count += 1;
        }
    }
    let threshold = 2.0 * tiling.r_used * tiling.r_used;
    let heavy_boxes = counts.iter().filter(|&&c| c as f64 >= threshold).count();
    let max_box_count = counts.iter().copied().max().unwrap_or(0);
    let annulus_area = (2.0 * outer).powi(2) - (6.0 * big_r).powi(2);

    let mut cfg = PeelConfig::restricted(5, inner);
    cfg.max_rounds = max_rounds;
    let levels = peel_to_core(tri, &cfg);
    let core = Window::centered(big_r)?;
    let core_survivors = (0..pts.len()).filter(|&v| levels.levels[v] == Level::Survivor && core.contains(&pts[v])).count();

    Ok(OmegaReport {
        big_r,
        l,
        r: big_r.cbrt(),
        omega: [
            core_survivors > 0,
            long_edges > 0,
            rare_boxes > 0,
            heavy_boxes > 0,
            annulus_count as f64 > 2.0 * annulus_area,
        ],
        tiling,
        long_edges,
        rare_boxes,
        max_box_count,
        heavy_boxes,
        annulus_count,
        annulus_area,
        core_survivors,
        peel_rounds: levels.rounds_executed,
    })
}

fn sample_for(big_r: f64, seed: u64) -> Result<(Triangulation, Window)> {
    let w = Window::centered(3.0 * big_r + big_r.ln())?;
    let ps = sample_poisson(w, SAMPLE_PAD, 1.0, seed)?;
    Ok((delaunay(&ps)?, ps.padded_window()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaTrial {
    #[serde(rename = "R")]
    pub big_r: f64,
    pub seed: u64,
    pub omega: [bool; 5],
    pub long_edges: usize,
    pub rare_boxes: usize,
    pub heavy_boxes: usize,
    pub annulus_count: usize,
    pub core_survivors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaExperiment {
    pub r_grid: Vec<f64>,
    pub tilings: Vec<Tiling>,
    /// `estimates[k][i]`: event `i` at `r_grid[k]`, 95% Wilson interval.
    pub estimates: Vec<[Estimate; 5]>,
    pub rows: Vec<OmegaTrial>,
}

/// All five events on fresh samples for every `R` in the grid. Trial `i`
/// uses seed `seed_base + i` at every `R`.
pub fn omega_experiment(r_grid: &[f64], trials: u64, seed_base: u64) -> Result<OmegaExperiment> {
    if trials == 0 {
        return Err(Error::param("need at least one trial"));
    }
    let mut rows = Vec::new();
    let mut estimates = Vec::new();
    for &big_r in r_grid {
        let batch = run_trials(trials, |i| -> Result<OmegaTrial> {
            let seed = seed_base.wrapping_add(i);
            let (tri, w) = sample_for(big_r, seed)?;
            let rep = omega_report(&tri, &w, big_r)?;
            Ok(OmegaTrial {
                big_r,
                seed,
                omega: rep.omega,
                long_edges: rep.long_edges,
                rare_boxes: rep.rare_boxes,
                heavy_boxes: rep.heavy_boxes,
                annulus_count: rep.annulus_count,
                core_survivors: rep.core_survivors,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        estimates.push(std::array::from_fn(|e| {
            Estimate::wilson(batch.iter().filter(|t| t.omega[e]).count() as u64, trials, Z95)
        }));
        rows.extend(batch);
    }
    Ok(OmegaExperiment {
        r_grid: r_grid.to_vec(),
        tilings: r_grid.iter().map(|&r| Tiling::new(r)).collect(),
        estimates,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictedCoreExperiment {
    #[serde(rename = "R")]
    pub big_r: f64,
    pub max_rounds: Option<usize>,
    /// Probability of survivors in `Q(0, R)`, 95% Wilson interval.
    pub estimate: Estimate,
    /// `(seed, survivors in Q(0, R))` per trial.
    pub rows: Vec<(u64, usize)>,
}

/// Restricted peeling of `Q(0, 3R)` on fresh samples.
pub fn restricted_core_experiment(
    big_r: f64,
    trials: u64,
    max_rounds: Option<usize>,
    seed_base: u64,
) -> Result<RestrictedCoreExperiment> {
    if trials == 0 {
        return Err(Error::param("need at least one trial"));
    }
    let rows = run_trials(trials, |i| -> Result<(u64, usize)> {
        let seed = seed_base.wrapping_add(i);
        let (tri, w) = sample_for(big_r, seed)?;
        Ok((seed, omega_report_rounds(&tri, &w, big_r, max_rounds)?.core_survivors))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let hits = rows.iter().filter(|r| r.1 > 0).count() as u64;
    Ok(RestrictedCoreExperiment { big_r, max_rounds, estimate: Estimate::wilson(hits, trials, Z95), rows })
}
