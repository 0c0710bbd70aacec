//! Points, windows, Delaunay triangulations and clipped Voronoi cells.

pub(crate) mod boundary;
mod delaunay;
mod grid;
pub mod predicates;
mod sampling;
mod voronoi;

pub use boundary::outer_boundary;
pub use delaunay::{delaunay, delaunay_points, Triangulation};
pub use grid::SpatialGrid;
pub use sampling::{sample_poisson, PointSet, DEFAULT_PAD};
pub use voronoi::{voronoi_cells, CellEdge, VoronoiCell};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Lexicographic (x, then y) comparison.
    pub fn lex_cmp(&self, other: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&other.x).then(self.y.total_cmp(&other.y))
    }
}

/// An axis-aligned square `center + [-half_side, half_side]^2`, optionally
/// with the open inner square of half side `inner_radius` removed (an annulus).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub center: Point,
    pub half_side: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_radius: Option<f64>,
}

impl Window {
    pub fn new(center: Point, half_side: f64) -> Result<Self> {
        let w = Window { center, half_side, inner_radius: None };
        w.validate()?;
        Ok(w)
    }

    /// `Q(0, half_side)`.
    pub fn centered(half_side: f64) -> Result<Self> {
        Self::new(Point::new(0.0, 0.0), half_side)
    }

    pub fn annulus(center: Point, inner_radius: f64, half_side: f64) -> Result<Self> {
        let w = Window { center, half_side, inner_radius: Some(inner_radius) };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.center.is_finite() {
            return Err(Error::param("window center must be finite"));
        }
        if !(self.half_side > 0.0 && self.half_side.is_finite()) {
            return Err(Error::param(format!("window half side must be positive, got {}", self.half_side)));
        }
        if let Some(r) = self.inner_radius {
            if !(r > 0.0 && r < self.half_side) {
                return Err(Error::param(format!(
                    "annulus inner radius must lie in (0, {}), got {r}",
                    self.half_side
                )));
            }
        }
        Ok(())
    }

    pub fn min_x(&self) -> f64 {
        self.center.x - self.half_side
    }
    pub fn max_x(&self) -> f64 {
        self.center.x + self.half_side
    }
    pub fn min_y(&self) -> f64 {
        self.center.y - self.half_side
    }
    pub fn max_y(&self) -> f64 {
        self.center.y + self.half_side
    }

    pub fn side(&self) -> f64 {
        2.0 * self.half_side
    }

    pub fn area(&self) -> f64 {
        let outer = self.side() * self.side();
        match self.inner_radius {
            Some(r) => outer - 4.0 * r * r,
            None => outer,
        }
    }

    /// Same center, half side grown by `pad`; any annulus hole is dropped.
    pub fn padded(&self, pad: f64) -> Window {
        Window { center: self.center, half_side: self.half_side + pad, inner_radius: None }
    }

    /// Closed membership (the inner hole of an annulus is open, so its
    /// boundary belongs to the annulus).
    pub fn contains(&self, p: &Point) -> bool {
        let dx = (p.x - self.center.x).abs();
        let dy = (p.y - self.center.y).abs();
        let m = dx.max(dy);
        if m > self.half_side {
            return false;
        }
        match self.inner_radius {
            Some(r) => m >= r,
            None => true,
        }
    }

    /// The four corners in counter-clockwise order starting bottom-left.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.min_x(), self.min_y()),
            Point::new(self.max_x(), self.min_y()),
            Point::new(self.max_x(), self.max_y()),
            Point::new(self.min_x(), self.max_y()),
        ]
    }

    /// Whether the closed segment `a`-`b` meets the closed outer square.
    pub fn intersects_segment(&self, a: &Point, b: &Point) -> bool {
        // Liang-Barsky on the parametric segment a + t (b - a), t in [0, 1].
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        let d = [b.x - a.x, b.y - a.y];
        let lo = [self.min_x(), self.min_y()];
        let hi = [self.max_x(), self.max_y()];
        let s = [a.x, a.y];
        for k in 0..2 {
            if d[k] == 0.0 {
                if s[k] < lo[k] || s[k] > hi[k] {
                    return false;
                }
            } else {
                let mut ta = (lo[k] - s[k]) / d[k];
                let mut tb = (hi[k] - s[k]) / d[k];
                if ta > tb {
                    std::mem::swap(&mut ta, &mut tb);
                }
                t0 = t0.max(ta);
                t1 = t1.min(tb);
                if t0 > t1 {
                    return false;
                }
            }
        }
        true
    }
}
