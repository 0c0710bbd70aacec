use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::{Point, Window};
use crate::rng::{self, Stream};
use crate::{Error, Result};

/// Default padding (length units at unit intensity) between the analysis
/// window and the sampling window.
pub const DEFAULT_PAD: f64 = 20.0;

/// A finite point sample on the padded window `sample_window.padded(pad)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point>,
    pub sample_window: Window,
    pub pad: f64,
    pub intensity: f64,
    pub seed: u64,
}

impl PointSet {
    /// Wraps explicit points, checking the `PointSet` invariants.
    pub fn from_points(
        points: Vec<Point>,
        sample_window: Window,
        pad: f64,
        intensity: f64,
        seed: u64,
    ) -> Result<Self> {
        check_params(&sample_window, pad, intensity)?;
        let padded = sample_window.padded(pad);
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput(format!("non-finite point {p:?}")));
        }
        if let Some(p) = points.iter().find(|p| !padded.contains(p)) {
            return Err(Error::DegenerateInput(format!("point {p:?} outside the padded window")));
        }
        reject_duplicates(&points)?;
        Ok(PointSet { points, sample_window, pad, intensity, seed })
    }

    pub fn padded_window(&self) -> Window {
        self.sample_window.padded(self.pad)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn check_params(window: &Window, pad: f64, intensity: f64) -> Result<()> {
    window.validate()?;
    if window.inner_radius.is_some() {
        return Err(Error::param("sampling window must be a full square"));
    }
    if !(intensity > 0.0 && intensity.is_finite()) {
        return Err(Error::param(format!("intensity must be positive, got {intensity}")));
    }
    if !(pad >= 0.0 && pad.is_finite()) {
        return Err(Error::param(format!("pad width must be non-negative, got {pad}")));
    }
    Ok(())
}

pub(crate) fn reject_duplicates(points: &[Point]) -> Result<()> {
    let mut keys: Vec<(u64, u64, usize)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits(), i))
        .collect();
    keys.sort_unstable();
    for w in keys.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
            return Err(Error::DegenerateInput(format!(
                "points {} and {} coincide",
                w[0].2, w[1].2
            )));
        }
    }
    Ok(())
}

/// Samples a homogeneous Poisson process of the given intensity on
/// `window.padded(pad)`.
///
/// The count is Poisson(intensity * padded area); positions are uniform and
/// drawn x-then-y from the `Points` stream of `seed`.
pub fn sample_poisson(window: Window, pad: f64, intensity: f64, seed: u64) -> Result<PointSet> {
    check_params(&window, pad, intensity)?;
    let padded = window.padded(pad);
    let mean = intensity * padded.area();
    let mut rng = rng::seeded(seed, Stream::Points);
    let count = Poisson::new(mean)
        .map_err(|e| Error::param(format!("poisson mean {mean}: {e}")))?
        .sample(&mut rng) as usize;
    let (x0, y0, side) = (padded.min_x(), padded.min_y(), padded.side());
    let points = (0..count)
        .map(|_| {
            let x = x0 + side * rng::unit_f64(&mut rng);
            let y = y0 + side * rng::unit_f64(&mut rng);
            Point::new(x, y)
        })
        .collect::<Vec<_>>();
    reject_duplicates(&points)?;
    Ok(PointSet { points, sample_window: window, pad, intensity, seed })
}
