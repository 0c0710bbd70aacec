use serde::{Deserialize, Serialize};

use rand_distr::{Distribution, Poisson};

use super::{Coloring, Scheme};
use crate::rng::{self, Stream};
use crate::{Error, Result};

pub const GREEN: u32 = 0;
pub const RED: u32 = 1;
pub const BLUE: u32 = 2;

/// Voronoi cells of points on a line. Interior cell `i` spans the midpoints
/// to its two neighbors; the two end cells are unbounded and carry length
/// `f64::INFINITY`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellInterval1D {
    pub sorted_points: Vec<f64>,
    pub cell_lengths: Vec<f64>,
}

impl CellInterval1D {
    pub fn new(points: &[f64]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::param(format!("need at least 3 points, got {}", points.len())));
        }
        if points.iter().any(|x| !x.is_finite()) || points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param("points must be finite and strictly increasing"));
        }
        let n = points.len();
        let cell_lengths = (0..n)
            .map(|i| if i == 0 || i == n - 1 { f64::INFINITY } else { 0.5 * (points[i + 1] - points[i - 1]) })
            .collect();
        Ok(CellInterval1D { sorted_points: points.to_vec(), cell_lengths })
    }

    pub fn len(&self) -> usize {
        self.sorted_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted_points.is_empty()
    }

    pub fn is_boundary(&self, i: usize) -> bool {
        i == 0 || i + 1 == self.len()
    }
}

/// A fallback decision taken by the 1-D scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineTie {
    /// A run of equal lengths below both neighbors; its leftmost cell was
    /// made green.
    Plateau { start: usize, end: usize },
    /// Two bounding greens of equal length; the stretch was colored from the
    /// left.
    EqualGreens { left: usize, right: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineColoring {
    pub coloring: Coloring,
    pub greens: Vec<usize>,
    pub ties: Vec<LineTie>,
}

/// Sorted Poisson sample of the given intensity on `[0, length]`.
pub fn sample_line(length: f64, intensity: f64, seed: u64) -> Result<Vec<f64>> {
    if !(length > 0.0 && length.is_finite() && intensity > 0.0 && intensity.is_finite()) {
        return Err(Error::param(format!("length {length} and intensity {intensity} must be positive")));
    }
    let mut rng = rng::seeded(seed, Stream::Points);
    let count = Poisson::new(length * intensity)
        .map_err(|e| Error::param(e.to_string()))?
        .sample(&mut rng) as usize;
    let mut xs: Vec<f64> = (0..count).map(|_| length * rng::unit_f64(&mut rng)).collect();
    xs.sort_by(f64::total_cmp);
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DegenerateInput("repeated point on the line".into()));
    }
    Ok(xs)
}

/// Colors the cells of a sorted 1-D point sample.
pub fn color_1d(points: &[f64]) -> Result<LineColoring> {
    let cells = CellInterval1D::new(points)?;
    Ok(color_1d_lengths(&cells.cell_lengths))
}

/// Colors a row of cells given their lengths. The first and last cells are
/// never green.
pub fn color_1d_lengths(lengths: &[f64]) -> LineColoring {
    let n = lengths.len();
    let mut greens = Vec::new();
    let mut ties = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        let mut j = i;
        while j + 2 < n && lengths[j + 1] == lengths[i] {
            j += 1;
        }
        let l = lengths[i];
        if lengths[i - 1] > l && lengths[j + 1] > l {
            greens.push(i);
            if j > i {
                ties.push(LineTie::Plateau { start: i, end: j });
            }
        }
        i = j + 1;
    }
    let mut colors = vec![u32::MAX; n];
    for &g in &greens {
        colors[g] = GREEN;
    }
    let alternate = |k: usize| if k % 2 == 0 { RED } else { BLUE };
    match (greens.first(), greens.last()) {
        (Some(&first), Some(&last)) => {
            for (k, c) in (0..first).rev().enumerate() {
                colors[c] = alternate(k);
            }
            for (k, c) in (last + 1..n).enumerate() {
                colors[c] = alternate(k);
            }
            for w in greens.windows(2) {
                let (a, b) = (w[0], w[1]);
                let from_right = lengths[b] < lengths[a];
                if lengths[a] == lengths[b] {
                    ties.push(LineTie::EqualGreens { left: a, right: b });
                }
                if from_right {
                    for (k, c) in (a + 1..b).rev().enumerate() {
                        colors[c] = alternate(k);
                    }
                } else {
                    for (k, c) in (a + 1..b).enumerate() {
                        colors[c] = alternate(k);
                    }
                }
            }
        }
        _ => {
            for (k, c) in colors.iter_mut().enumerate() {
                *c = alternate(k);
            }
        }
    }
    LineColoring { coloring: Coloring { colors, scheme: Scheme::OneDim3 }, greens, ties }
}
