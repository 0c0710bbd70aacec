use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{mex, Coloring, Scheme};
use crate::geometry::{voronoi_cells, Point, Triangulation, VoronoiCell, Window};
use crate::graph::Graph;
use crate::peeling::{peel_to_core, Level, LevelAssignment, PeelConfig};
use crate::{Error, Result};

/// Total order on sites by cell area, with exact ties broken by site
/// coordinates.
#[derive(Clone, Copy, Debug)]
pub struct AreaOrder<'a> {
    pub areas: &'a [f64],
    pub points: &'a [Point],
}

impl AreaOrder<'_> {
    /// Compares `(area, x, y)` lexicographically.
    pub fn cmp(&self, u: usize, v: usize) -> Ordering {
        self.areas[u]
            .total_cmp(&self.areas[v])
            .then_with(|| self.points[u].lex_cmp(&self.points[v]))
    }

    pub fn is_tie(&self, u: usize, v: usize) -> bool {
        self.areas[u] == self.areas[v]
    }
}

/// Orientation of the Delaunay edges: `u -> v` when `v` has a higher level,
/// or the same level and a smaller cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDag {
    out: Graph,
    /// Edges `(u, v)`, `u < v`, whose direction came from coordinates
    /// because the two areas were exactly equal.
    pub tie_breaks: Vec<(usize, usize)>,
}

impl OrderDag {
    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        self.out.neighbors(v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out.degree(v)
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.len()).map(|v| self.out_degree(v)).max().unwrap_or(0)
    }

    /// Vertices ordered so every vertex comes after all of its out-neighbors.
    pub fn sink_first_order(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let mut pending: Vec<usize> = (0..n).map(|v| self.out_degree(v)).collect();
        let mut incoming = vec![Vec::new(); n];
        for u in 0..n {
            for &v in self.out_neighbors(u) {
                incoming[v].push(u);
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| pending[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &incoming[v] {
                pending[u] -= 1;
                if pending[u] == 0 {
                    queue.push_back(u);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Invariant(format!("order graph has a cycle through {} vertices", n - order.len())));
        }
        Ok(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.sink_first_order().is_ok()
    }
}

/// Orients every Delaunay edge by (level, area). Levels must come from
/// unrestricted peeling that removed every vertex.
pub fn build_order_dag(tri: &Triangulation, levels: &LevelAssignment, areas: &[f64]) -> Result<OrderDag> {
    let n = tri.len();
    if levels.levels.len() != n || areas.len() != n {
        return Err(Error::contract("levels and areas must cover every vertex"));
    }
    if levels.config.region.is_some() {
        return Err(Error::contract("order graph needs unrestricted peeling levels"));
    }
    let lv: Vec<u32> = levels
        .levels
        .iter()
        .enumerate()
        .map(|(v, l)| l.peeled().ok_or_else(|| Error::contract(format!("vertex {v} was never peeled"))))
        .collect::<Result<_>>()?;
    let order = AreaOrder { areas, points: tri.vertices() };
    let mut out = vec![Vec::new(); n];
    let mut tie_breaks = Vec::new();
    for (u, v) in tri.edges() {
        let up = match lv[u].cmp(&lv[v]) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => {
                if order.is_tie(u, v) {
                    tie_breaks.push((u, v));
                }
                order.cmp(v, u) == Ordering::Less
            }
        };
        if up {
            out[u].push(v);
        } else {
            out[v].push(u);
        }
    }
    let dag = OrderDag { out: Graph::from_lists(&out), tie_breaks };
    let bound = levels.config.max_deg;
    if let Some(v) = (0..n).find(|&v| dag.out_degree(v) > bound) {
        return Err(Error::Invariant(format!("vertex {v} has out-degree {} > {bound}", dag.out_degree(v))));
    }
    Ok(dag)
}

/// `f(u) = mex { f(v) : u -> v }`, evaluated sinks first.
pub fn color_deterministic(dag: &OrderDag) -> Result<Coloring> {
    let mut colors = vec![0u32; dag.len()];
    for v in dag.sink_first_order()? {
        colors[v] = mex(dag.out_neighbors(v).iter().map(|&w| colors[w]));
    }
    Ok(Coloring { colors, scheme: Scheme::Det6 })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredecessorSet {
    pub vertex: usize,
    /// Sorted; excludes `vertex` itself.
    pub vertices: Vec<usize>,
    /// Largest distance from the vertex's site to a predecessor's site.
    pub radius: f64,
}

/// Everything reachable from `v` along out-edges: the vertices whose colors
/// determine `v`'s color.
pub fn predecessor_set(dag: &OrderDag, v: usize, points: &[Point]) -> PredecessorSet {
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![v];
    let mut radius: f64 = 0.0;
    while let Some(u) = stack.pop() {
        for &w in dag.out_neighbors(u) {
            if seen.insert(w) {
                radius = radius.max(points[v].dist(&points[w]));
                stack.push(w);
            }
        }
    }
    let mut vertices: Vec<usize> = seen.into_iter().collect();
    vertices.sort_unstable();
    PredecessorSet { vertex: v, vertices, radius }
}

/// `clean[v]` is true iff neither `v` nor any of its predecessors is `bad`.
pub fn clean_closure(dag: &OrderDag, bad: &[bool]) -> Result<Vec<bool>> {
    let mut clean = vec![false; dag.len()];
    for v in dag.sink_first_order()? {
        clean[v] = !bad[v] && dag.out_neighbors(v).iter().all(|&w| clean[w]);
    }
    Ok(clean)
}

/// Everything the deterministic scheme produces for one triangulation.
#[derive(Clone, Debug)]
pub struct Det6 {
    pub cells: Vec<VoronoiCell>,
    pub levels: LevelAssignment,
    pub dag: OrderDag,
    pub coloring: Coloring,
}

impl Det6 {
    pub fn contaminated(&self) -> Vec<bool> {
        self.cells.iter().map(|c| c.contaminated).collect()
    }

    /// Vertices whose whole predecessor set (and themselves) is
    /// uncontaminated and free of tie-broken edges.
    pub fn reliable(&self) -> Result<Vec<bool>> {
        let mut bad = self.contaminated();
        for &(u, v) in &self.dag.tie_breaks {
            bad[u] = true;
            bad[v] = true;
        }
        clean_closure(&self.dag, &bad)
    }
}

/// Cells clipped to `clip`, maxDeg-5 peeling, order graph and mex coloring.
pub fn det6(tri: &Triangulation, clip: &Window) -> Result<Det6> {
    let cells = voronoi_cells(tri, clip)?;
    let levels = peel_to_core(tri, &PeelConfig::full(5));
    if levels.levels.contains(&Level::Survivor) {
        return Err(Error::Invariant("peeling left a nonempty 6-core in a finite planar graph".into()));
    }
    let areas: Vec<f64> = cells.iter().map(|c| c.area).collect();
    let dag = build_order_dag(tri, &levels, &areas)?;
    let coloring = color_deterministic(&dag)?;
    Ok(Det6 { cells, levels, dag, coloring })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{delaunay_points, sample_poisson};

    fn peeled(levels: Vec<u32>) -> LevelAssignment {
        LevelAssignment {
            levels: levels.into_iter().map(Level::Peeled).collect(),
            rounds_executed: 1,
            config: PeelConfig::full(5),
        }
    }

    fn triangle() -> Triangulation {
        delaunay_points(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn equal_levels_point_to_smaller_area() {
        let tri = triangle();
        // a = 0 (largest), b = 1, c = 2 (smallest)
        let dag = build_order_dag(&tri, &peeled(vec![0, 0, 0]), &[3.0, 2.0, 1.0]).unwrap();
        assert_eq!(dag.out_neighbors(0), &[1, 2]);
        assert_eq!(dag.out_neighbors(1), &[2]);
        assert!(dag.out_neighbors(2).is_empty());
        let c = color_deterministic(&dag).unwrap();
        assert_eq!(c.colors, vec![2, 1, 0]);
        let pred = predecessor_set(&dag, 0, tri.vertices());
        assert_eq!(pred.vertices, vec![1, 2]);
        assert!((pred.radius - 1.0).abs() < 1e-15);
        let sink = predecessor_set(&dag, 2, tri.vertices());
        assert!(sink.vertices.is_empty());
        assert_eq!(sink.radius, 0.0);
    }

    #[test]
    fn higher_level_wins_over_area() {
        let tri = triangle();
        let dag = build_order_dag(&tri, &peeled(vec![1, 0, 0]), &[3.0, 2.0, 1.0]).unwrap();
        assert!(dag.out_neighbors(0).is_empty());
        assert_eq!(dag.out_neighbors(1), &[0, 2]);
    }

    #[test]
    fn exact_area_ties_are_logged() {
        let tri = triangle();
        let dag = build_order_dag(&tri, &peeled(vec![0, 0, 0]), &[1.0, 1.0, 2.0]).unwrap();
        assert_eq!(dag.tie_breaks, vec![(0, 1)]);
        // (0,0) sorts before (1,0), so vertex 0 counts as the smaller cell
        assert_eq!(dag.out_neighbors(1), &[0]);
        assert!(dag.is_acyclic());
    }

    #[test]
    fn unpeeled_or_restricted_levels_are_rejected() {
        let tri = triangle();
        let mut l = peeled(vec![0, 0, 0]);
        l.levels[1] = Level::Survivor;
        assert!(build_order_dag(&tri, &l, &[1.0, 2.0, 3.0]).is_err());
        let mut l = peeled(vec![0, 0, 0]);
        l.config.region = Some(Window::centered(1.0).unwrap());
        assert!(build_order_dag(&tri, &l, &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn cycles_are_reported() {
        let dag = OrderDag { out: Graph::from_lists(&[vec![1], vec![2], vec![0]]), tie_breaks: vec![] };
        assert!(matches!(color_deterministic(&dag), Err(Error::Invariant(_))));
    }

    #[test]
    fn isolated_vertex_gets_zero() {
        let dag = OrderDag { out: Graph::from_lists(&[Vec::<usize>::new()]), tie_breaks: vec![] };
        assert_eq!(color_deterministic(&dag).unwrap().colors, vec![0]);
    }

    #[test]
    fn sample_is_properly_colored() {
        let ps = sample_poisson(Window::centered(15.0).unwrap(), 5.0, 1.0, 11).unwrap();
        let tri = delaunay_points(&ps.points).unwrap();
        let out = det6(&tri, &ps.padded_window()).unwrap();
        assert!(out.dag.max_out_degree() <= 5);
        assert!(out.coloring.colors.iter().all(|&c| c < 6));
        let report = super::super::verify_proper(&out.coloring.colors, tri.adjacency(), None);
        assert!(report.ok, "{:?}", report.violations);
        let reliable = out.reliable().unwrap();
        assert!(reliable.iter().any(|&r| r));
        assert!(reliable.iter().zip(out.contaminated()).all(|(&r, c)| !(r && c)));
    }
}
