use serde::{Deserialize, Serialize};

use super::{Point, Triangulation, Window};
use crate::{Error, Result};

/// What produced an edge of a clipped cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellEdge {
    /// Part of the clip window boundary.
    Window,
    /// Part of the bisector with this Delaunay neighbor.
    Neighbor(usize),
}

/// A Voronoi cell clipped to the sampling window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VoronoiCell {
    pub site: usize,
    /// Counter-clockwise polygon.
    pub polygon: Vec<Point>,
    /// `edges[k]` labels the edge from `polygon[k]` to `polygon[k + 1]`.
    pub edges: Vec<CellEdge>,
    pub area: f64,
    /// The true cell may differ: the clipped polygon touches the window or
    /// the site lies on the convex hull.
    pub contaminated: bool,
}

impl VoronoiCell {
    /// Shoelace area of `polygon`.
    pub fn shoelace_area(&self) -> f64 {
        shoelace(&self.polygon, &self.polygon[0])
    }

    /// Length of the boundary shared with the bisector of `neighbor`.
    pub fn shared_length(&self, neighbor: usize) -> f64 {
        let n = self.polygon.len();
        (0..n)
            .filter(|&k| self.edges[k] == CellEdge::Neighbor(neighbor))
            .map(|k| self.polygon[k].dist(&self.polygon[(k + 1) % n]))
            .sum()
    }
}

fn shoelace(poly: &[Point], origin: &Point) -> f64 {
    let n = poly.len();
    let mut twice = 0.0;
    for k in 0..n {
        let a = &poly[k];
        let b = &poly[(k + 1) % n];
        twice += (a.x - origin.x) * (b.y - origin.y) - (b.x - origin.x) * (a.y - origin.y);
    }
    0.5 * twice
}

/// One clipped cell per site, each the window intersected with the
/// bisector half-planes of the site's Delaunay neighbors.
///
/// Neighbors are applied in lexicographic order of their coordinates, so a
/// cell depends only on the geometry of its site and neighbors, never on
/// vertex numbering.
pub fn voronoi_cells(tri: &Triangulation, clip: &Window) -> Result<Vec<VoronoiCell>> {
    clip.validate()?;
    if clip.inner_radius.is_some() {
        return Err(Error::contract("clip window must be a full square"));
    }
    let pts = tri.vertices();
    if let Some(i) = (0..pts.len()).find(|&i| !clip.contains(&pts[i])) {
        return Err(Error::contract(format!("site {i} lies outside the clip window")));
    }
    let mut cur: Vec<(Point, CellEdge)> = Vec::with_capacity(16);
    let mut next: Vec<(Point, CellEdge)> = Vec::with_capacity(16);
    let mut order: Vec<usize> = Vec::with_capacity(16);
    let mut cells = Vec::with_capacity(pts.len());
    for site in 0..pts.len() {
        let s = pts[site];
        cur.clear();
        cur.extend(clip.corners().into_iter().map(|c| (c, CellEdge::Window)));
        order.clear();
        order.extend_from_slice(tri.neighbors(site));
        order.sort_by(|&a, &b| pts[a].lex_cmp(&pts[b]));
        for &q in &order {
            let d = Point::new(pts[q].x - s.x, pts[q].y - s.y);
            let half = 0.5 * (d.x * d.x + d.y * d.y);
            // inside iff (z - s) . d <= |d|^2 / 2
            let f = |z: &Point| (z.x - s.x) * d.x + (z.y - s.y) * d.y - half;
            next.clear();
            let m = cur.len();
            for k in 0..m {
                let (z0, label) = cur[k];
                let z1 = cur[(k + 1) % m].0;
                let (f0, f1) = (f(&z0), f(&z1));
                if f0 <= 0.0 {
                    next.push((z0, label));
                    if f1 > 0.0 {
                        next.push((lerp(&z0, &z1, f0 / (f0 - f1)), CellEdge::Neighbor(q)));
                    }
                } else if f1 <= 0.0 {
                    next.push((lerp(&z0, &z1, f0 / (f0 - f1)), label));
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        if cur.len() < 3 {
            return Err(Error::Invariant(format!("cell of site {site} collapsed")));
        }
        let polygon: Vec<Point> = cur.iter().map(|e| e.0).collect();
        let edges: Vec<CellEdge> = cur.iter().map(|e| e.1).collect();
        let area = shoelace(&polygon, &s);
        let contaminated = tri.is_hull(site) || edges.contains(&CellEdge::Window);
        cells.push(VoronoiCell { site, polygon, edges, area, contaminated });
    }
    Ok(cells)
}

#[inline]
fn lerp(a: &Point, b: &Point, t: f64) -> Point {
    Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
}
