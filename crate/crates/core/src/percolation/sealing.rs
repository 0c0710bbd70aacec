use serde::{Deserialize, Serialize};

use rand_distr::{Distribution, Poisson};

use super::{run_trials, Estimate, Z99};
use crate::geometry::{delaunay_points, sample_poisson, voronoi_cells, Point, Window};
use crate::rng::{self, Stream};
use crate::{Error, Result};

/// Gaps shorter than this are treated as covered.
const COVER_TOL: f64 = 1e-12;

/// Part of a square's boundary farther than `alpha` from every point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UncoveredSegment {
    /// Boundary side, counterclockwise from the bottom: 0 bottom, 1 right,
    /// 2 top, 3 left.
    pub side: usize,
    pub from: Point,
    pub to: Point,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SealingCheck {
    pub square: Window,
    pub alpha: f64,
    pub sealed: bool,
    pub uncovered: Vec<UncoveredSegment>,
}

/// Exact test that every boundary point of `square` is within `alpha` of
/// some point: each point covers a chord of every side line it is close
/// to, and the chords must cover all four sides.
pub fn is_sealed(points: &[Point], square: &Window, alpha: f64) -> Result<SealingCheck> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param(format!("alpha must be positive, got {alpha}")));
    }
    square.validate()?;
    let corners = square.corners();
    let side = square.side();
    let mut uncovered = Vec::new();
    let mut chords: Vec<(f64, f64)> = Vec::new();
    for k in 0..4 {
        let a = corners[k];
        let b = corners[(k + 1) % 4];
        let (ux, uy) = ((b.x - a.x) / side, (b.y - a.y) / side);
        chords.clear();
        for p in points {
            let (dx, dy) = (p.x - a.x, p.y - a.y);
            let t = dx * ux + dy * uy;
            let d = dx * uy - dy * ux;
            let slack = alpha * alpha - d * d;
            if slack < 0.0 {
                continue;
            }
            let w = slack.sqrt();
            let (lo, hi) = ((t - w).max(0.0), (t + w).min(side));
            if lo <= hi {
                chords.push((lo, hi));
            }
        }
        chords.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut reach = 0.0f64;
        let mut gap = |from: f64, to: f64| {
            if to - from > COVER_TOL {
                uncovered.push(UncoveredSegment {
                    side: k,
                    from: Point::new(a.x + ux * from, a.y + uy * from),
                    to: Point::new(a.x + ux * to, a.y + uy * to),
                });
            }
        };
        for &(lo, hi) in &chords {
            if lo > reach {
                gap(reach, lo);
            }
            reach = reach.max(hi);
        }
        gap(reach, side);
    }
    Ok(SealingCheck { square: *square, alpha, sealed: uncovered.is_empty(), uncovered })
}

/// Sufficient condition used by the probability bound: `ceil(8R/alpha)`
/// evenly spaced boundary points each have a point within `alpha/2`.
pub fn net_sealed(points: &[Point], square: &Window, alpha: f64) -> bool {
    let r = square.half_side;
    let m = (8.0 * r / alpha).ceil() as usize;
    let step = 8.0 * r / m as f64;
    let corners = square.corners();
    let side = square.side();
    (0..m).all(|i| {
        // offset by half a step so every boundary point is within step/2
        let s = (i as f64 + 0.5) * step;
        let k = ((s / side) as usize).min(3);
        let t = s - k as f64 * side;
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        let q = Point::new(a.x + (b.x - a.x) * t / side, a.y + (b.y - a.y) * t / side);
        points.iter().any(|p| p.dist2(&q) <= 0.25 * alpha * alpha)
    })
}

/// `ceil(8R/alpha) * exp(-pi alpha^2 / 4)`.
pub fn sealed_bound(r: f64, alpha: f64) -> f64 {
    (8.0 * r / alpha).ceil() * (-std::f64::consts::PI * alpha * alpha / 4.0).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SealedTrial {
    pub seed: u64,
    pub sealed: bool,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SealedExperiment {
    pub r: f64,
    pub alpha: f64,
    /// Probability of *not* being sealed, 99% Wilson interval.
    pub estimate: Estimate,
    pub analytic_bound: f64,
    /// The interval's lower end does not exceed the bound.
    pub consistent: bool,
    pub rows: Vec<SealedTrial>,
}

/// Samples unit-intensity points on `Q(0, R + alpha)` per trial and checks
/// whether `Q(0, R)` is alpha-sealed. Trial `i` uses seed `seed_base + i`.
pub fn sealed_probability_experiment(r: f64, alpha: f64, trials: u64, seed_base: u64) -> Result<SealedExperiment> {
    if trials < 100 {
        return Err(Error::param(format!("need at least 100 trials, got {trials}")));
    }
    let square = Window::centered(r)?;
    let rows = run_trials(trials, |i| -> Result<SealedTrial> {
        let seed = seed_base.wrapping_add(i);
        let ps = sample_poisson(square, alpha, 1.0, seed)?;
        let sealed = is_sealed(&ps.points, &square, alpha)?.sealed;
        Ok(SealedTrial { seed, sealed, points: ps.len() })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let failures = rows.iter().filter(|t| !t.sealed).count() as u64;
    let estimate = Estimate::wilson(failures, trials, Z99);
    let analytic_bound = sealed_bound(r, alpha);
    Ok(SealedExperiment { r, alpha, estimate, analytic_bound, consistent: estimate.lo <= analytic_bound, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceTrial {
    pub seed: u64,
    /// `Q(0, 4R)` is R-sealed.
    pub sealed: bool,
    /// Cells with site in `Q(0, 3R)`.
    pub cells: usize,
    /// Every such cell is bit-identical after the modification.
    pub identical: bool,
}

/// Samples unit-intensity points on `Q(0, 7R)`, then replaces every point
/// outside `Q(0, 5R)` by a fresh sample of intensity 2 and compares the
/// Voronoi cells of sites in `Q(0, 3R)` before and after, coordinate by
/// coordinate.
pub fn sealed_independence_trial(big_r: f64, seed: u64) -> Result<IndependenceTrial> {
    if !(big_r > 0.0 && big_r.is_finite()) {
        return Err(Error::param(format!("R must be positive, got {big_r}")));
    }
    let ps = sample_poisson(Window::centered(6.0 * big_r)?, big_r, 1.0, seed)?;
    let sealed = is_sealed(&ps.points, &Window::centered(4.0 * big_r)?, big_r)?.sealed;
    if !sealed {
        return Ok(IndependenceTrial { seed, sealed, cells: 0, identical: false });
    }
    let clip = ps.padded_window();
    let keep = Window::centered(5.0 * big_r)?;
    let inner: Vec<Point> = ps.points.iter().copied().filter(|p| keep.contains(p)).collect();
    let mut rng = rng::seeded(seed, Stream::Auxiliary);
    let count = Poisson::new(2.0 * clip.area()).map_err(|e| Error::param(e.to_string()))?.sample(&mut rng) as usize;
    let mut modified = inner.clone();
    let outer = |rng: &mut _| Point::new(clip.min_x() + clip.side() * rng::unit_f64(rng), clip.min_y() + clip.side() * rng::unit_f64(rng));
    modified.extend((0..count).map(|_| outer(&mut rng)).filter(|p| !keep.contains(p)));
    let mut original = inner.clone();
    original.extend(ps.points.iter().copied().filter(|p| !keep.contains(p)));

    let a = voronoi_cells(&delaunay_points(&original)?, &clip)?;
    let b = voronoi_cells(&delaunay_points(&modified)?, &clip)?;
    let core = Window::centered(3.0 * big_r)?;
    let mut cells = 0;
    let mut identical = true;
    for (v, p) in inner.iter().enumerate() {
        if core.contains(p) {
            cells += 1;
            let same = a[v].polygon.len() == b[v].polygon.len()
                && a[v].polygon.iter().zip(&b[v].polygon).all(|(s, t)| s.x.to_bits() == t.x.to_bits() && s.y.to_bits() == t.y.to_bits())
                && a[v].area.to_bits() == b[v].area.to_bits();
            identical &= same;
        }
    }
    Ok(IndependenceTrial { seed, sealed, cells, identical })
}
