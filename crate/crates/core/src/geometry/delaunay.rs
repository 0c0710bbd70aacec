//! Incremental Delaunay triangulation.
//!
//! Points are inserted in Hilbert-curve order. Each insertion locates the
//! point by a visibility walk from the previously created triangle, grows the
//! conflict cavity (all triangles whose perturbed circumcircle contains the
//! point) and re-triangulates it as a fan. The convex hull is closed off by
//! ghost triangles sharing a vertex at infinity; a ghost triangle is in
//! conflict with a point that sees its hull edge from outside, or that lies
//! strictly inside the hull edge.

use super::predicates::{in_circle_perturbed, orient, strictly_between};
use super::sampling::reject_duplicates;
use super::{Point, PointSet};
use crate::graph::Graph;
use crate::{Error, Result};

const GHOST: u32 = u32::MAX;
const DEAD: u32 = u32::MAX - 1;

/// A Delaunay triangulation of a finite point set.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangulation {
    vertices: Vec<Point>,
    triangles: Vec<[usize; 3]>,
    adjacency: Graph,
    rotation: Graph,
    hull: Vec<bool>,
}

impl Triangulation {
    /// Assembles a triangulation from counter-clockwise triangles and
    /// derives adjacency, rotation system and hull flags.
    ///
    /// Checks orientation and that every directed edge is used at most once;
    /// it does not check the empty-circumcircle property.
    pub fn from_triangles(vertices: Vec<Point>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let n = vertices.len();
        for t in &triangles {
            if t.iter().any(|&v| v >= n) {
                return Err(Error::Format(format!("triangle {t:?} references a missing vertex")));
            }
            let [a, b, c] = *t;
            if orient(&vertices[a], &vertices[b], &vertices[c]) <= 0.0 {
                return Err(Error::Format(format!("triangle {t:?} is not counter-clockwise")));
            }
        }
        // next_ccw[a] holds (b, c): around a, neighbor c follows b counter-clockwise.
        let mut fan: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &[a, b, c] in &triangles {
            fan[a].push((b, c));
            fan[b].push((c, a));
            fan[c].push((a, b));
        }
        let mut rotation = Vec::with_capacity(n);
        let mut hull = vec![false; n];
        for v in 0..n {
            let pairs = &mut fan[v];
            pairs.sort_unstable();
            if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Format(format!("vertex {v} has a non-manifold fan")));
            }
            if pairs.is_empty() {
                rotation.push(Vec::new());
                continue;
            }
            let is_target = |x: usize| pairs.iter().any(|&(_, t)| t == x);
            let start = pairs.iter().map(|&(s, _)| s).find(|&s| !is_target(s));
            hull[v] = start.is_some();
            let first = start.unwrap_or(pairs[0].0);
            let mut ring = vec![first];
            let mut cur = first;
            while let Ok(i) = pairs.binary_search_by(|&(s, _)| s.cmp(&cur)) {
                let next = pairs[i].1;
                if next == first {
                    break;
                }
                ring.push(next);
                cur = next;
                if ring.len() > pairs.len() + 1 {
                    return Err(Error::Format(format!("vertex {v} has a broken fan")));
                }
            }
            if ring.len() != pairs.len() + usize::from(hull[v]) {
                return Err(Error::Format(format!("vertex {v} fan is not a single disk")));
            }
            rotation.push(ring);
        }
        let rotation = Graph::from_lists(&rotation);
        let lists: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut l = rotation.neighbors(v).to_vec();
                l.sort_unstable();
                l
            })
            .collect();
        let adjacency = Graph::from_lists(&lists);
        Ok(Triangulation { vertices, triangles, adjacency, rotation, hull })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Delaunay neighbors with sorted lists.
    pub fn adjacency(&self) -> &Graph {
        &self.adjacency
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.adjacency.neighbors(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency.degree(v)
    }

    /// Neighbors of `v` in counter-clockwise order. For hull vertices the
    /// sequence starts and ends at the two hull neighbors.
    pub fn rotation(&self, v: usize) -> &[usize] {
        self.rotation.neighbors(v)
    }

    pub fn rotation_system(&self) -> &Graph {
        &self.rotation
    }

    pub fn is_hull(&self, v: usize) -> bool {
        self.hull[v]
    }

    pub fn hull_flags(&self) -> &[bool] {
        &self.hull
    }

    pub fn hull_len(&self) -> usize {
        self.hull.iter().filter(|&&h| h).count()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.num_edges()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.edges()
    }

    /// `triangles = 2n - 2 - h` and `edges = 3n - 3 - h`.
    pub fn euler_consistent(&self) -> bool {
        let n = self.len();
        let h = self.hull_len();
        n >= 3 && self.triangles.len() + h + 2 == 2 * n && self.num_edges() + h + 3 == 3 * n
    }
}

/// Delaunay triangulation of a sampled point set.
pub fn delaunay(points: &PointSet) -> Result<Triangulation> {
    build(&points.points)
}

/// Delaunay triangulation of raw points (duplicates rejected).
pub fn delaunay_points(points: &[Point]) -> Result<Triangulation> {
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput(format!("non-finite point {p:?}")));
    }
    reject_duplicates(points)?;
    build(points)
}

fn build(points: &[Point]) -> Result<Triangulation> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!("need at least 3 points, got {}", points.len())));
    }
    let mut order = hilbert_order(points);
    let a = order[0] as usize;
    let b = order[1] as usize;
    let Some(k) = (2..order.len())
        .find(|&k| orient(&points[a], &points[b], &points[order[k] as usize]) != 0.0)
    else {
        return Err(Error::DegenerateInput("all points are collinear".into()));
    };
    let c = order.remove(k);
    order.insert(2, c);

    let mut builder = Builder::new(points);
    builder.init(order[0], order[1], order[2]);
    for &p in &order[3..] {
        builder.insert(p);
    }
    let triangles = builder.finish();
    Triangulation::from_triangles(points.to_vec(), triangles)
}

#[derive(Clone, Copy, Debug)]
struct Tri {
    v: [u32; 3],
    // n[i] is the neighbor across the edge opposite v[i]
    n: [u32; 3],
}

impl Tri {
    #[inline]
    fn ghost_slot(&self) -> Option<usize> {
        self.v.iter().position(|&x| x == GHOST)
    }
}

struct Builder<'a> {
    pts: &'a [Point],
    tris: Vec<Tri>,
    free: Vec<u32>,
    // (epoch << 1) | in_cavity
    mark: Vec<u64>,
    epoch: u64,
    last: u32,
    stack: Vec<u32>,
    cavity: Vec<u32>,
    // (u, w, outside triangle, index of the shared edge in it)
    boundary: Vec<(u32, u32, u32, u8)>,
    fan: Vec<(u32, u32, u32)>,
}

impl<'a> Builder<'a> {
    fn new(pts: &'a [Point]) -> Self {
        let cap = 2 * pts.len() + 8;
        Builder {
            pts,
            tris: Vec::with_capacity(cap),
            free: Vec::new(),
            mark: Vec::with_capacity(cap),
            epoch: 0,
            last: 0,
            stack: Vec::new(),
            cavity: Vec::new(),
            boundary: Vec::new(),
            fan: Vec::new(),
        }
    }

    #[inline]
    fn p(&self, i: u32) -> &Point {
        &self.pts[i as usize]
    }

    fn init(&mut self, a: u32, b: u32, c: u32) {
        let (b, c) = if orient(self.p(a), self.p(b), self.p(c)) > 0.0 { (b, c) } else { (c, b) };
        // 0: real triangle; 1..=3: ghosts across its edges 0, 1, 2.
        let v = [a, b, c];
        self.tris.push(Tri { v, n: [1, 2, 3] });
        for i in 0..3 {
            let u = v[(i + 1) % 3];
            let w = v[(i + 2) % 3];
            // Ghost (w, u, G): edge 2 faces the real triangle, edge 0 = (u, G)
            // touches the ghost starting at u, edge 1 = (G, w) the one ending at w.
            let next = 1 + ((i + 2) % 3) as u32; // ghost whose first vertex is u
            let prev = 1 + ((i + 1) % 3) as u32; // ghost whose second vertex is w
            self.tris.push(Tri { v: [w, u, GHOST], n: [next, prev, 0] });
        }
        self.mark.resize(self.tris.len(), 0);
        self.last = 0;
    }

    fn conflict(&self, t: u32, q: u32) -> bool {
        let tri = &self.tris[t as usize];
        match tri.ghost_slot() {
            Some(k) => {
                let a = self.p(tri.v[(k + 1) % 3]);
                let b = self.p(tri.v[(k + 2) % 3]);
                let pq = self.p(q);
                let o = orient(a, b, pq);
                o > 0.0 || (o == 0.0 && strictly_between(a, b, pq))
            }
            None => in_circle_perturbed(
                self.pts,
                [tri.v[0] as usize, tri.v[1] as usize, tri.v[2] as usize],
                q as usize,
            ),
        }
    }

    fn locate(&self, q: u32) -> u32 {
        let pq = self.p(q);
        let mut t = self.last;
        if let Some(k) = self.tris[t as usize].ghost_slot() {
            t = self.tris[t as usize].n[k];
        }
        let mut step = 0usize;
        'walk: loop {
            let tri = self.tris[t as usize];
            if tri.ghost_slot().is_some() {
                return t;
            }
            for j in 0..3 {
                let i = (step + j) % 3;
                let a = self.p(tri.v[(i + 1) % 3]);
                let b = self.p(tri.v[(i + 2) % 3]);
                if orient(a, b, pq) < 0.0 {
                    t = tri.n[i];
                    step += 1;
                    continue 'walk;
                }
            }
            return t;
        }
    }

    fn alloc(&mut self, tri: Tri) -> u32 {
        if let Some(t) = self.free.pop() {
            self.tris[t as usize] = tri;
            t
        } else {
            self.tris.push(tri);
            self.mark.push(0);
            (self.tris.len() - 1) as u32
        }
    }

    fn insert(&mut self, q: u32) {
        let start = self.locate(q);
        self.epoch += 1;
        let in_cavity = (self.epoch << 1) | 1;
        let rejected = self.epoch << 1;
        self.cavity.clear();
        self.boundary.clear();
        self.stack.clear();
        self.stack.push(start);
        self.mark[start as usize] = in_cavity;
        while let Some(t) = self.stack.pop() {
            self.cavity.push(t);
            let tri = self.tris[t as usize];
            for i in 0..3 {
                let nb = tri.n[i];
                let m = self.mark[nb as usize];
                if m == in_cavity {
                    continue;
                }
                if m != rejected {
                    if self.conflict(nb, q) {
                        self.mark[nb as usize] = in_cavity;
                        self.stack.push(nb);
                        continue;
                    }
                    self.mark[nb as usize] = rejected;
                }
                let back = self.tris[nb as usize].n.iter().position(|&x| x == t).expect("symmetric adjacency");
                self.boundary.push((tri.v[(i + 1) % 3], tri.v[(i + 2) % 3], nb, back as u8));
            }
        }
        for &t in &self.cavity {
            self.tris[t as usize].v = [DEAD; 3];
        }
        self.free.extend(self.cavity.iter().rev());

        self.fan.clear();
        for bi in 0..self.boundary.len() {
            let (u, w, nb, back) = self.boundary[bi];
            let t = self.alloc(Tri { v: [u, w, q], n: [GHOST, GHOST, nb] });
            self.tris[nb as usize].n[back as usize] = t;
            self.fan.push((u, w, t));
        }
        for fi in 0..self.fan.len() {
            let (u, w, t) = self.fan[fi];
            let across_wq = self.fan.iter().find(|f| f.0 == w).expect("closed fan").2;
            let across_qu = self.fan.iter().find(|f| f.1 == u).expect("closed fan").2;
            let tri = &mut self.tris[t as usize];
            tri.n[0] = across_wq;
            tri.n[1] = across_qu;
            if u != GHOST && w != GHOST {
                self.last = t;
            }
        }
    }

    fn finish(self) -> Vec<[usize; 3]> {
        self.tris
            .iter()
            .filter(|t| t.v[0] != DEAD && t.ghost_slot().is_none())
            .map(|t| [t.v[0] as usize, t.v[1] as usize, t.v[2] as usize])
            .collect()
    }
}

/// Indices sorted along a Hilbert curve over the bounding box.
fn hilbert_order(points: &[Point]) -> Vec<u32> {
    const BITS: u32 = 16;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let scale = ((1u32 << BITS) - 1) as f64 / span;
    let mut keyed: Vec<(u64, u32)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let hx = ((p.x - x0) * scale) as u32;
            let hy = ((p.y - y0) * scale) as u32;
            (hilbert_index(BITS, hx, hy), i as u32)
        })
        .collect();
    keyed.sort_unstable();
    keyed.into_iter().map(|(_, i)| i).collect()
}

fn hilbert_index(bits: u32, mut x: u32, mut y: u32) -> u64 {
    let n = 1u32 << bits;
    let mut d = 0u64;
    let mut s = n >> 1;
    while s > 0 {
        let rx = u32::from(x & s > 0);
        let ry = u32::from(y & s > 0);
        d += (s as u64) * (s as u64) * ((3 * rx) ^ ry) as u64;
        if ry == 0 {
            if rx == 1 {
                x = n - 1 - x;
                y = n - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        s >>= 1;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::predicates::incircle;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn rejects_small_and_collinear_inputs() {
        assert!(matches!(delaunay_points(&pts(&[(0.0, 0.0), (1.0, 0.0)])), Err(Error::DegenerateInput(_))));
        let line = pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]);
        assert!(matches!(delaunay_points(&line), Err(Error::DegenerateInput(_))));
        let dup = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 0.0)]);
        assert!(matches!(delaunay_points(&dup), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn single_triangle() {
        let t = delaunay_points(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).unwrap();
        assert_eq!(t.triangles().len(), 1);
        assert!((0..3).all(|v| t.degree(v) == 2 && t.is_hull(v)));
        assert!(t.euler_consistent());
    }

    #[test]
    fn unit_square_picks_one_diagonal() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let t = delaunay_points(&p).unwrap();
        assert_eq!(t.triangles().len(), 2);
        assert_eq!(t.num_edges(), 5);
        // Closed circumdisk test for both triangles: nothing strictly inside.
        for tri in t.triangles() {
            for q in 0..4 {
                if !tri.contains(&q) {
                    assert!(incircle(&p[tri[0]], &p[tri[1]], &p[tri[2]], &p[q]) <= 0.0);
                }
            }
        }
        // Deterministic: same input, same answer.
        assert_eq!(delaunay_points(&p).unwrap(), t);
    }

    #[test]
    fn collinear_prefix_and_hull_extension() {
        // Many collinear points first, then off-line points, then points on
        // the hull line beyond the segment end.
        let mut v: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 0.0)).collect();
        v.push((4.5, 3.0));
        v.push((4.5, -2.0));
        v.push((12.0, 0.0));
        v.push((-3.0, 0.0));
        let t = delaunay_points(&pts(&v)).unwrap();
        assert!(t.euler_consistent());
        assert!(t.adjacency().is_symmetric());
    }

    #[test]
    fn hexagon_with_center() {
        let mut v: Vec<(f64, f64)> = (0..6)
            .map(|k| {
                let a = std::f64::consts::PI / 3.0 * k as f64 + 0.1;
                (a.cos(), a.sin())
            })
            .collect();
        v.push((0.0, 0.0));
        let t = delaunay_points(&pts(&v)).unwrap();
        assert_eq!(t.degree(6), 6);
        assert!(!t.is_hull(6));
        assert_eq!(t.triangles().len(), 6);
        let ring = t.rotation(6);
        // Counter-clockwise ring around the center.
        for k in 0..6 {
            let a = &t.vertices()[ring[k]];
            let b = &t.vertices()[ring[(k + 1) % 6]];
            assert!(orient(&t.vertices()[6], a, b) > 0.0);
        }
    }

    #[test]
    fn hilbert_index_is_a_bijection_on_small_grid() {
        let mut seen = std::collections::HashSet::new();
        for x in 0..4 {
            for y in 0..4 {
                assert!(seen.insert(hilbert_index(2, x, y)));
            }
        }
        assert_eq!(seen.into_iter().max(), Some(15));
    }
}
