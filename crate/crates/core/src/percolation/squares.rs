use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::geometry::predicates::strictly_inside_triangle;
use crate::geometry::{SpatialGrid, Triangulation, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SquareClass {
    /// Holds a vertex of degree below 6 that no 3-clique encloses.
    Typical,
    Rare,
}

/// Which vertices lie strictly inside a triangle spanned by three pairwise
/// adjacent vertices.
#[derive(Clone, Debug)]
pub struct CliqueCover {
    enclosed: Vec<bool>,
    grid: SpatialGrid,
}

impl CliqueCover {
    /// Faces of a Delaunay triangulation are empty, so only the other
    /// 3-cliques (separating triangles) are scanned, through a bucket grid.
    pub fn new(tri: &Triangulation) -> Self {
        let pts = tri.vertices();
        let grid = SpatialGrid::new(pts, grid_cell(tri));
        let mut faces: HashSet<[usize; 3]> = HashSet::with_capacity(tri.triangles().len());
        for t in tri.triangles() {
            let mut k = *t;
            k.sort_unstable();
            faces.insert(k);
        }
        let mut enclosed = vec![false; tri.len()];
        for_each_clique(tri, |a, b, c| {
            if faces.contains(&[a, b, c]) {
                return;
            }
            let (pa, pb, pc) = (pts[a], pts[b], pts[c]);
            let (x0, x1) = (pa.x.min(pb.x).min(pc.x), pa.x.max(pb.x).max(pc.x));
            let (y0, y1) = (pa.y.min(pb.y).min(pc.y), pa.y.max(pb.y).max(pc.y));
            for v in grid.candidates(x0, y0, x1, y1) {
                if !enclosed[v] && strictly_inside_triangle(&pa, &pb, &pc, &pts[v]) {
                    enclosed[v] = true;
                }
            }
        });
        CliqueCover { enclosed, grid }
    }

    pub fn is_enclosed(&self, v: usize) -> bool {
        self.enclosed[v]
    }

    pub fn enclosed(&self) -> &[bool] {
        &self.enclosed
    }

    pub fn classify(&self, tri: &Triangulation, square: &Window) -> SquareClass {
        let typical = self
            .grid
            .query(tri.vertices(), square)
            .any(|v| tri.degree(v) < 6 && !self.enclosed[v]);
        if typical {
            SquareClass::Typical
        } else {
            SquareClass::Rare
        }
    }
}

fn grid_cell(tri: &Triangulation) -> f64 {
    let pts = tri.vertices();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let area = ((x1 - x0) * (y1 - y0)).max(f64::MIN_POSITIVE);
    (area / pts.len().max(1) as f64).sqrt().max(1e-9)
}

/// Calls `f(a, b, c)` once per 3-clique with `a < b < c`.
fn for_each_clique(tri: &Triangulation, mut f: impl FnMut(usize, usize, usize)) {
    let adj = tri.adjacency();
    for a in 0..tri.len() {
        let na = adj.neighbors(a);
        for (i, &b) in na.iter().enumerate() {
            if b <= a {
                continue;
            }
            for &c in &na[i + 1..] {
                if adj.has_edge_sorted(b, c) {
                    f(a, b, c);
                }
            }
        }
    }
}

/// Classifies one square, building the clique cover on the fly.
pub fn classify_square(tri: &Triangulation, square: &Window) -> SquareClass {
    CliqueCover::new(tri).classify(tri, square)
}

/// Reference classification: every vertex against every 3-clique.
pub fn classify_square_brute(tri: &Triangulation, square: &Window) -> SquareClass {
    let pts = tri.vertices();
    let mut cliques = Vec::new();
    for_each_clique(tri, |a, b, c| cliques.push([a, b, c]));
    let typical = (0..tri.len()).any(|v| {
        square.contains(&pts[v])
            && tri.degree(v) < 6
            && !cliques.iter().any(|t| strictly_inside_triangle(&pts[t[0]], &pts[t[1]], &pts[t[2]], &pts[v]))
    });
    if typical {
        SquareClass::Typical
    } else {
        SquareClass::Rare
    }
}
