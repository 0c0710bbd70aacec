//! Embedded planar maps and exact counting identities on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Triangulation};
use crate::graph::Graph;

/// A connected simple graph with a rotation system: each vertex lists its
/// neighbors in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedMap {
    rotation: Graph,
}

impl EmbeddedMap {
    /// Wraps a rotation system without checking it; `map_stats` validates.
    pub fn from_rotation(rotation: Graph) -> Self {
        EmbeddedMap { rotation }
    }

    /// Straight-line embedding: neighbors sorted by angle around each point.
    pub fn from_straight_line(points: &[Point], edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let g = Graph::from_edges(points.len(), edges);
        let lists: Vec<Vec<usize>> = (0..g.len())
            .map(|v| {
                let p = points[v];
                let mut l = g.neighbors(v).to_vec();
                l.sort_by(|&a, &b| {
                    let ta = (points[a].y - p.y).atan2(points[a].x - p.x);
                    let tb = (points[b].y - p.y).atan2(points[b].x - p.x);
                    ta.total_cmp(&tb)
                });
                l
            })
            .collect();
        EmbeddedMap { rotation: Graph::from_lists(&lists) }
    }

    /// The map of the whole triangulation.
    pub fn of_triangulation(tri: &Triangulation) -> Self {
        EmbeddedMap { rotation: tri.rotation_system().clone() }
    }

    /// The sub-map induced by `subset` (relabeled `0..subset.len()`), with
    /// the cyclic orders inherited from the triangulation.
    pub fn induced(tri: &Triangulation, subset: &[usize]) -> Self {
        EmbeddedMap { rotation: tri.rotation_system().induced(subset).0 }
    }

    pub fn len(&self) -> usize {
        self.rotation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotation.is_empty()
    }

    pub fn rotation(&self) -> &Graph {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation.degree(v)
    }

    /// Adjacency with sorted neighbor lists.
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.len(), self.rotation.edges())
    }

    /// Face boundary walks; each face is a list of vertices with the face on
    /// the left of every step.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>> {
        let g = &self.rotation;
        let n = g.len();
        let mut start = vec![0usize; n + 1];
        for v in 0..n {
            start[v + 1] = start[v] + g.degree(v);
        }
        let darts = start[n];
        // twin position of each dart inside the head's rotation
        let mut twin_pos = vec![usize::MAX; darts];
        for u in 0..n {
            for (i, &v) in g.neighbors(u).iter().enumerate() {
                if v >= n || v == u {
                    return Err(Error::contract(format!("bad rotation entry {u}->{v}")));
                }
                let pos = g.neighbors(v).iter().position(|&w| w == u).ok_or_else(|| {
                    Error::contract(format!("rotation is not symmetric at edge {u}-{v}"))
                })?;
                twin_pos[start[u] + i] = pos;
            }
        }
        let mut seen = vec![false; darts];
        let mut faces = Vec::new();
        for d0 in 0..darts {
            if seen[d0] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = d0;
            let mut u = start.partition_point(|&s| s <= d0) - 1;
            while !seen[d] {
                seen[d] = true;
                face.push(u);
                let v = g.neighbors(u)[d - start[u]];
                let j = twin_pos[d];
                let dv = g.degree(v);
                d = start[v] + (j + dv - 1) % dv;
                u = v;
            }
            if d != d0 {
                return Err(Error::contract("face walk did not close"));
            }
            faces.push(face);
        }
        Ok(faces)
    }

    fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in self.rotation.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarMapStats {
    pub vertices: usize,
    pub edges: usize,
    /// Vertices of degree at most 5.
    pub ld: u64,
    /// Sum over faces of `deg(f) - 3`.
    pub me: u64,
    /// Sorted.
    pub face_degrees: Vec<usize>,
    /// Sorted.
    pub vertex_degrees: Vec<usize>,
    pub is_maximal_planar: bool,
}

impl PlanarMapStats {
    pub fn faces(&self) -> usize {
        self.face_degrees.len()
    }
}

/// Face and degree counts of a connected simple planar map.
pub fn map_stats(map: &EmbeddedMap) -> Result<PlanarMapStats> {
    let n = map.len();
    if n < 3 {
        return Err(Error::contract(format!("map has {n} vertices, need at least 3")));
    }
    for v in 0..n {
        let mut l = map.rotation.neighbors(v).to_vec();
        l.sort_unstable();
        if l.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::contract(format!("repeated edge at vertex {v}")));
        }
    }
    if !map.is_connected() {
        return Err(Error::contract("map is not connected"));
    }
    let faces = map.faces()?;
    let e = map.rotation.num_edges();
    if n + faces.len() != e + 2 {
        return Err(Error::contract(format!(
            "rotation system is not planar: V - E + F = {}",
            n as i64 - e as i64 + faces.len() as i64
        )));
    }
    let mut face_degrees: Vec<usize> = faces.iter().map(Vec::len).collect();
    face_degrees.sort_unstable();
    let mut vertex_degrees: Vec<usize> = (0..n).map(|v| map.degree(v)).collect();
    vertex_degrees.sort_unstable();
    let ld = vertex_degrees.iter().filter(|&&d| d <= 5).count() as u64;
    if face_degrees[0] < 3 {
        return Err(Error::contract("face of degree below 3 in a simple map with 3+ vertices"));
    }
    let me = face_degrees.iter().map(|&d| (d - 3) as u64).sum();
    let is_maximal_planar = face_degrees.iter().all(|&d| d == 3);
    Ok(PlanarMapStats { vertices: n, edges: e, ld, me, face_degrees, vertex_degrees, is_maximal_planar })
}

/// `LD >= (2/5) ME + 12/5`, evaluated as `5 LD >= 2 ME + 12`.
pub fn check_ld_bound(stats: &PlanarMapStats) -> bool {
    5 * stats.ld as u128 >= 2 * stats.me as u128 + 12
}

/// `sum_v (6 - deg v) == 12` on a maximal planar map.
pub fn check_euler_six(map: &EmbeddedMap) -> Result<bool> {
    let stats = map_stats(map)?;
    if !stats.is_maximal_planar {
        return Err(Error::contract("map has a non-triangular face"));
    }
    let total: i64 = stats.vertex_degrees.iter().map(|&d| 6 - d as i64).sum();
    Ok(total == 12)
}

/// Lower bound `8 rho^2 / (5 ell^2)` on the number of vertices of a large
/// 6-core in `Q(0, 3 rho)`.
pub fn min_core_size_bound(rho: f64, ell: f64) -> Result<f64> {
    if !(ell > 0.0 && rho.is_finite() && rho > ell) {
        return Err(Error::param(format!("need rho > ell > 0, got rho={rho}, ell={ell}")));
    }
    Ok(8.0 * rho * rho / (5.0 * ell * ell))
}
