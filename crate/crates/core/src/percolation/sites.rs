use serde::{Deserialize, Serialize};

use super::{find_long_edges, is_sealed, run_trials};
use crate::geometry::{delaunay_points, sample_poisson, voronoi_cells, Point, SpatialGrid, Window};
use crate::graph::Graph;
use crate::peeling::{components_of_mask, peel_to_core, Level, PeelConfig};
use crate::{Error, Result};

/// Rule deciding whether a lattice site is open, read off the points in a
/// window around the site.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SitePredicate {
    /// Lattice `R Z^2`. Open if `Q(x, 4R)` is not `R`-sealed, or `max_rounds`
    /// of maxDeg-5 peeling restricted to `Q(x, 3R)` leave a vertex in
    /// `Q(x, R)`, or an edge of length at least `R/2` meets `Q(x, R/2)`.
    Removal {
        #[serde(rename = "R")]
        big_r: f64,
        max_rounds: Option<usize>,
    },
    /// Lattice `2R Z^2`, `alpha = R/8`. Open if a cell meeting `Q(x, R)` has
    /// area in `[lo, hi)`, or `Q(x, R + alpha)` or `Q(x, R + 3 alpha)` is not
    /// alpha-sealed.
    Area {
        #[serde(rename = "R")]
        big_r: f64,
        lo: f64,
        hi: f64,
    },
}

impl SitePredicate {
    pub fn spacing(&self) -> f64 {
        match *self {
            SitePredicate::Removal { big_r, .. } => big_r,
            SitePredicate::Area { big_r, .. } => 2.0 * big_r,
        }
    }

    /// Half side of the square of points the predicate reads.
    pub fn read_radius(&self) -> f64 {
        match *self {
            SitePredicate::Removal { big_r, .. } => 5.0 * big_r,
            SitePredicate::Area { big_r, .. } => 1.5 * big_r,
        }
    }

    /// Least `k` such that sites `k` apart in lattice sup-distance read
    /// disjoint windows.
    pub fn dependency_range(&self) -> u32 {
        (2.0 * self.read_radius() / self.spacing()).floor() as u32 + 1
    }

    pub fn describe(&self) -> String {
        match *self {
            SitePredicate::Removal { big_r, max_rounds } => format!(
                "not R-sealed on Q(x,4R) or restricted core in Q(x,R) after {} rounds or edge >= R/2 meeting Q(x,R/2), R={big_r}",
                max_rounds.map_or("all".to_string(), |m| m.to_string())
            ),
            SitePredicate::Area { big_r, lo, hi } => {
                format!("cell area in [{lo},{hi}) meeting Q(x,R) or Q(x,R+a), Q(x,R+3a) not a-sealed, R={big_r}, a=R/8")
            }
        }
    }

    /// Evaluates the predicate at `x` from the points of its read window.
    pub fn evaluate(&self, x: Point, points: &[Point]) -> Result<bool> {
        let sq = |h: f64| Window { center: x, half_side: h, inner_radius: None };
        match *self {
            SitePredicate::Removal { big_r, max_rounds } => {
                if !is_sealed(points, &sq(4.0 * big_r), big_r)?.sealed {
                    return Ok(true);
                }
                let tri = delaunay_points(points)?;
                if !find_long_edges(&tri, &sq(big_r / 2.0), big_r / 2.0).is_empty() {
                    return Ok(true);
                }
                let mut cfg = PeelConfig::restricted(5, sq(3.0 * big_r));
                cfg.max_rounds = max_rounds;
                let levels = peel_to_core(&tri, &cfg);
                let core = sq(big_r);
                Ok((0..tri.len()).any(|v| levels.levels[v] == Level::Survivor && core.contains(&tri.vertices()[v])))
            }
            SitePredicate::Area { big_r, lo, hi } => {
                let alpha = big_r / 8.0;
                if !is_sealed(points, &sq(big_r + alpha), alpha)?.sealed
                    || !is_sealed(points, &sq(big_r + 3.0 * alpha), alpha)?.sealed
                {
                    return Ok(true);
                }
                let tri = delaunay_points(points)?;
                let cells = voronoi_cells(&tri, &sq(self.read_radius()))?;
                let target = sq(big_r);
                Ok(cells.iter().any(|c| c.area >= lo && c.area < hi && polygon_meets_square(&c.polygon, &target)))
            }
        }
    }
}

fn polygon_meets_square(poly: &[Point], sq: &Window) -> bool {
    let n = poly.len();
    if (0..n).any(|k| sq.intersects_segment(&poly[k], &poly[(k + 1) % n])) {
        return true;
    }
    // square entirely inside the polygon
    let c = sq.center;
    (0..n).all(|k| {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) >= 0.0
    })
}

/// Open and closed sites on a `cols x rows` patch of a square lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiteProcess {
    pub spacing: f64,
    pub cols: usize,
    pub rows: usize,
    /// Site `(i, j)` sits at `origin + spacing * (i, j)`.
    pub origin: Point,
    pub dependency_range: u32,
    /// Row-major.
    pub open: Vec<bool>,
    pub predicate: String,
}

impl SiteProcess {
    pub fn site(&self, i: usize, j: usize) -> Point {
        Point::new(self.origin.x + self.spacing * i as f64, self.origin.y + self.spacing * j as f64)
    }

    pub fn open_fraction(&self) -> f64 {
        self.open.iter().filter(|&&o| o).count() as f64 / self.open.len().max(1) as f64
    }
}

/// Samples one Poisson configuration covering every read window and
/// evaluates the predicate at each site of a lattice patch centered at the
/// origin.
pub fn sample_site_process(pred: &SitePredicate, cols: usize, rows: usize, seed: u64) -> Result<SiteProcess> {
    if cols == 0 || rows == 0 {
        return Err(Error::param("lattice patch must be nonempty"));
    }
    let s = pred.spacing();
    let origin = Point::new(-s * (cols - 1) as f64 / 2.0, -s * (rows - 1) as f64 / 2.0);
    let reach = s * (cols.max(rows) - 1) as f64 / 2.0 + pred.read_radius();
    let ps = sample_poisson(Window::centered(reach)?, 0.0, 1.0, seed)?;
    site_process_from_points(pred, cols, rows, origin, &ps.points)
}

/// Same as [`sample_site_process`] on given points.
pub fn site_process_from_points(
    pred: &SitePredicate,
    cols: usize,
    rows: usize,
    origin: Point,
    points: &[Point],
) -> Result<SiteProcess> {
    let s = pred.spacing();
    let grid = SpatialGrid::new(points, s.max(1.0));
    let open = run_trials((cols * rows) as u64, |k| -> Result<bool> {
        let (i, j) = (k as usize % cols, k as usize / cols);
        let x = Point::new(origin.x + s * i as f64, origin.y + s * j as f64);
        let w = Window { center: x, half_side: pred.read_radius(), inner_radius: None };
        let mut local: Vec<Point> = grid.query(points, &w).map(|v| points[v]).collect();
        // a fixed order keeps the result independent of the global numbering
        local.sort_by(|a, b| a.lex_cmp(b));
        pred.evaluate(x, &local)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SiteProcess {
        spacing: s,
        cols,
        rows,
        origin,
        dependency_range: pred.dependency_range(),
        open,
        predicate: pred.describe(),
    })
}

/// Sizes of the open clusters (4-neighbor lattice adjacency), largest first.
pub fn site_process_components(p: &SiteProcess) -> Vec<usize> {
    let (c, r) = (p.cols, p.rows);
    let mut edges = Vec::new();
    for j in 0..r {
        for i in 0..c {
            let k = j * c + i;
            if i + 1 < c {
                edges.push((k, k + 1));
            }
            if j + 1 < r {
                edges.push((k, k + c));
            }
        }
    }
    let g = Graph::from_edges(c * r, edges);
    let mut sizes: Vec<usize> = components_of_mask(&g, &p.open).iter().map(|c| c.size()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Marginal below which the path-counting argument rules out infinite
/// clusters for a `k`-dependent process: `4^(-k^2)`.
pub fn p0_threshold(k: u32) -> f64 {
    4f64.powf(-((k * k) as f64))
}

/// Expected number of open self-avoiding paths of length `len` from a site:
/// `(4 p0^(1/k^2))^len`.
pub fn path_count_bound(p0: f64, k: u32, len: u32) -> f64 {
    (4.0 * p0.powf(1.0 / (k * k) as f64)).powi(len as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_lattice_has_no_clusters() {
        let p = SiteProcess {
            spacing: 1.0,
            cols: 4,
            rows: 3,
            origin: Point::new(0.0, 0.0),
            dependency_range: 1,
            open: vec![false; 12],
            predicate: String::new(),
        };
        assert!(site_process_components(&p).is_empty());
        let mut q = p.clone();
        for k in [0, 1, 5, 11] {
            q.open[k] = true;
        }
        assert_eq!(site_process_components(&q), vec![3, 1]);
    }

    #[test]
    fn threshold_balances_path_count() {
        for k in 1..4 {
            assert!((path_count_bound(p0_threshold(k), k, 50) - 1.0).abs() < 1e-9);
            assert!(path_count_bound(p0_threshold(k) / 2.0, k, 50) < 1.0);
        }
    }

    #[test]
    fn dependency_ranges() {
        let rem = SitePredicate::Removal { big_r: 3.0, max_rounds: None };
        assert_eq!(rem.dependency_range(), 11);
        let area = SitePredicate::Area { big_r: 3.0, lo: 0.0, hi: 1.0 };
        assert_eq!(area.dependency_range(), 2);
        for pred in [rem, area] {
            let k = pred.dependency_range() as f64;
            let r = pred.read_radius();
            // windows k apart are disjoint, k - 1 apart they meet
            assert!(k * pred.spacing() > 2.0 * r);
            assert!((k - 1.0) * pred.spacing() <= 2.0 * r);
        }
    }

    #[test]
    fn far_points_do_not_change_a_site() {
        let pred = SitePredicate::Area { big_r: 4.0, lo: 0.9, hi: 1.1 };
        let ps = sample_poisson(Window::centered(16.0).unwrap(), 0.0, 1.0, 9).unwrap();
        let origin = Point::new(-4.0, -4.0);
        let base = site_process_from_points(&pred, 2, 2, origin, &ps.points).unwrap();
        let mut moved = ps.points.clone();
        let reach = pred.read_radius();
        let inside = |p: &Point| {
            (0..2).any(|i| (0..2).any(|j| {
                let x = Point::new(origin.x + 8.0 * i as f64, origin.y + 8.0 * j as f64);
                (p.x - x.x).abs() <= reach && (p.y - x.y).abs() <= reach
            }))
        };
        moved.retain(inside);
        moved.push(Point::new(15.9, 15.9));
        let again = site_process_from_points(&pred, 2, 2, origin, &moved).unwrap();
        assert_eq!(base.open, again.open);
    }

    #[test]
    fn polygon_square_meeting() {
        let tri = [Point::new(0.0, 0.0), Point::new(10.0, 0.0), Point::new(0.0, 10.0)];
        let small = Window { center: Point::new(2.0, 2.0), half_side: 0.5, inner_radius: None };
        assert!(polygon_meets_square(&tri, &small));
        let away = Window { center: Point::new(9.0, 9.0), half_side: 0.5, inner_radius: None };
        assert!(!polygon_meets_square(&tri, &away));
    }
}
