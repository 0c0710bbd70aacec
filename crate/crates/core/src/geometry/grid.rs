use super::{Point, Window};

/// Uniform bucket grid over a fixed set of points for window queries.
#[derive(Clone, Debug)]
pub struct SpatialGrid {
    x0: f64,
    y0: f64,
    cell: f64,
    nx: usize,
    ny: usize,
    starts: Vec<usize>,
    items: Vec<usize>,
}

impl SpatialGrid {
    /// Buckets of side `cell` covering the bounding box of `points`.
    pub fn new(points: &[Point], cell: f64) -> Self {
        assert!(cell > 0.0);
        let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        if let Some(p) = points.first() {
            (x0, y0, x1, y1) = (p.x, p.y, p.x, p.y);
        }
        for p in points {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        let nx = (((x1 - x0) / cell).floor() as usize + 1).max(1);
        let ny = (((y1 - y0) / cell).floor() as usize + 1).max(1);
        let mut grid = SpatialGrid { x0, y0, cell, nx, ny, starts: vec![0; nx * ny + 1], items: Vec::new() };
        let keys: Vec<usize> = points.iter().map(|p| grid.key(p)).collect();
        for &k in &keys {
            grid.starts[k + 1] += 1;
        }
        for i in 0..nx * ny {
            grid.starts[i + 1] += grid.starts[i];
        }
        let mut fill = grid.starts.clone();
        grid.items = vec![0; points.len()];
        for (i, &k) in keys.iter().enumerate() {
            grid.items[fill[k]] = i;
            fill[k] += 1;
        }
        grid
    }

    fn clamp_ix(&self, x: f64) -> usize {
        let i = ((x - self.x0) / self.cell).floor();
        if i <= 0.0 {
            0
        } else {
            (i as usize).min(self.nx - 1)
        }
    }

    fn clamp_iy(&self, y: f64) -> usize {
        let i = ((y - self.y0) / self.cell).floor();
        if i <= 0.0 {
            0
        } else {
            (i as usize).min(self.ny - 1)
        }
    }

    fn key(&self, p: &Point) -> usize {
        self.clamp_iy(p.y) * self.nx + self.clamp_ix(p.x)
    }

    /// Candidate ids whose bucket meets the box `[x0, x1] x [y0, y1]`; callers
    /// filter exactly.
    pub fn candidates(&self, x0: f64, y0: f64, x1: f64, y1: f64) -> impl Iterator<Item = usize> + '_ {
        let (ix0, ix1) = (self.clamp_ix(x0), self.clamp_ix(x1));
        let (iy0, iy1) = (self.clamp_iy(y0), self.clamp_iy(y1));
        (iy0..=iy1).flat_map(move |iy| {
            let row = iy * self.nx;
            let lo = self.starts[row + ix0];
            let hi = self.starts[row + ix1 + 1];
            self.items[lo..hi].iter().copied()
        })
    }

    /// Ids of points inside the closed window (annulus holes respected).
    pub fn query<'a>(&'a self, points: &'a [Point], w: &'a Window) -> impl Iterator<Item = usize> + 'a {
        self.candidates(w.min_x(), w.min_y(), w.max_x(), w.max_y()).filter(move |&i| w.contains(&points[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_matches_linear_scan() {
        let pts: Vec<Point> = (0..400)
            .map(|i| Point::new(((i * 37) % 101) as f64 * 0.3 - 10.0, ((i * 59) % 97) as f64 * 0.25 - 7.0))
            .collect();
        let grid = SpatialGrid::new(&pts, 1.7);
        for w in [
            Window::centered(3.0).unwrap(),
            Window::new(Point::new(5.0, 2.0), 4.5).unwrap(),
            Window::annulus(Point::new(-2.0, 1.0), 1.0, 6.0).unwrap(),
            Window::centered(100.0).unwrap(),
        ] {
            let mut got: Vec<usize> = grid.query(&pts, &w).collect();
            got.sort_unstable();
            let want: Vec<usize> = (0..pts.len()).filter(|&i| w.contains(&pts[i])).collect();
            assert_eq!(got, want);
        }
    }
}
