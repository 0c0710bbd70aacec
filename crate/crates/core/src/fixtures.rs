//! Small named graphs and lattices used by tests, examples and experiments.

use crate::geometry::{Point, Window};
use crate::graph::Graph;
use crate::planar::EmbeddedMap;

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn k3() -> EmbeddedMap {
    let pts = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)];
    EmbeddedMap::from_straight_line(&pts, complete(3).edges())
}

pub fn c4() -> EmbeddedMap {
    let pts = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
    EmbeddedMap::from_straight_line(&pts, [(0, 1), (1, 2), (2, 3), (3, 0)])
}

/// K4 drawn as a triangle with its center.
pub fn k4() -> EmbeddedMap {
    let pts = [Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(0.0, 4.0), Point::new(1.0, 1.0)];
    EmbeddedMap::from_straight_line(&pts, complete(4).edges())
}

pub fn octahedron() -> EmbeddedMap {
    let c = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    polyhedron(&c)
}

/// The 12-vertex 5-regular polyhedron.
pub fn icosahedron() -> EmbeddedMap {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut c = Vec::with_capacity(12);
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            c.push([0.0, s1, s2 * phi]);
            c.push([s1, s2 * phi, 0.0]);
            c.push([s2 * phi, 0.0, s1]);
        }
    }
    polyhedron(&c)
}

/// Convex polyhedron centered at the origin with all edges of minimal length;
/// rotations are counterclockwise seen from outside.
fn polyhedron(c: &[[f64; 3]]) -> EmbeddedMap {
    let d2 = |a: &[f64; 3], b: &[f64; 3]| (0..3).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>();
    let mut min = f64::INFINITY;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            min = min.min(d2(&c[i], &c[j]));
        }
    }
    let lists: Vec<Vec<usize>> = (0..c.len())
        .map(|v| {
            let n = c[v];
            let helper = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let e1 = cross(&helper, &n);
            let e2 = cross(&n, &e1);
            let mut nb: Vec<(f64, usize)> = (0..c.len())
                .filter(|&w| w != v && d2(&c[v], &c[w]) < min * (1.0 + 1e-9))
                .map(|w| {
                    let t = [c[w][0] - n[0], c[w][1] - n[1], c[w][2] - n[2]];
                    (dot(&t, &e2).atan2(dot(&t, &e1)), w)
                })
                .collect();
            nb.sort_by(|a, b| a.0.total_cmp(&b.0));
            nb.into_iter().map(|(_, w)| w).collect()
        })
        .collect();
    EmbeddedMap::from_rotation(Graph::from_lists(&lists))
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Wheel: rim vertices `0..rim` on the unit circle and the hub as vertex `rim`.
pub fn wheel(rim: usize) -> (Vec<Point>, EmbeddedMap) {
    let mut pts: Vec<Point> = (0..rim)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / rim as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    pts.push(Point::new(0.0, 0.0));
    let edges: Vec<(usize, usize)> = (0..rim).flat_map(|i| [(i, (i + 1) % rim), (i, rim)]).collect();
    let map = EmbeddedMap::from_straight_line(&pts, edges);
    (pts, map)
}

#[derive(Clone, Debug)]
pub struct Lattice {
    pub points: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
}

/// Triangular lattice patch with `cols` points per row and `rows` rows;
/// odd rows are shifted right by half a spacing.
pub fn triangular_lattice(cols: usize, rows: usize, spacing: f64) -> Lattice {
    let h = spacing * 3f64.sqrt() / 2.0;
    let id = |i: usize, j: usize| j * cols + i;
    let mut points = Vec::with_capacity(cols * rows);
    let mut edges = Vec::new();
    for j in 0..rows {
        let shift = if j % 2 == 1 { spacing / 2.0 } else { 0.0 };
        for i in 0..cols {
            points.push(Point::new(i as f64 * spacing + shift, j as f64 * h));
            if i + 1 < cols {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < rows {
                edges.push((id(i, j), id(i, j + 1)));
                if j % 2 == 0 && i > 0 {
                    edges.push((id(i, j), id(i - 1, j + 1)));
                }
                if j % 2 == 1 && i + 1 < cols {
                    edges.push((id(i, j), id(i + 1, j + 1)));
                }
            }
        }
    }
    Lattice { points, edges }
}

/// Triangular lattice points (one point at the window center) inside a closed
/// square window.
pub fn triangular_lattice_in(window: &Window, spacing: f64) -> Vec<Point> {
    let h = spacing * 3f64.sqrt() / 2.0;
    let c = window.center;
    let jmax = (window.half_side / h).floor() as i64;
    let imax = (window.half_side / spacing).ceil() as i64 + 1;
    let mut out = Vec::new();
    for j in -jmax..=jmax {
        let shift = if j.rem_euclid(2) == 1 { spacing / 2.0 } else { 0.0 };
        for i in -imax..=imax {
            let p = Point::new(c.x + i as f64 * spacing + shift, c.y + j as f64 * h);
            if window.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Unit grid `0..k` by `0..k`.
pub fn grid(k: usize) -> Vec<Point> {
    (0..k).flat_map(|j| (0..k).map(move |i| Point::new(i as f64, j as f64))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let ico = icosahedron();
        assert_eq!(ico.len(), 12);
        assert!((0..12).all(|v| ico.degree(v) == 5));
        let oct = octahedron();
        assert!((0..6).all(|v| oct.degree(v) == 4));
        let (_, w) = wheel(4);
        assert_eq!(w.degree(4), 4);
        assert!((0..4).all(|v| w.degree(v) == 3));
    }

    #[test]
    fn lattice_interior_degree_six() {
        let lat = triangular_lattice(6, 6, 2.0);
        let g = Graph::from_edges(36, lat.edges.iter().copied());
        assert_eq!(g.degree(2 * 6 + 2), 6);
        assert_eq!(g.degree(3 * 6 + 3), 6);
        for (u, v) in g.edges() {
            assert!((lat.points[u].dist(&lat.points[v]) - 2.0).abs() < 1e-12);
        }
        let w = Window::centered(3.0).unwrap();
        let pts = triangular_lattice_in(&w, 1.0);
        assert!(pts.iter().all(|p| w.contains(p)));
        assert!(pts.contains(&Point::new(0.0, 0.0)));
    }
}
