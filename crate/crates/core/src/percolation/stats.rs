use serde::{Deserialize, Serialize};

/// Two-sided normal quantiles.
pub const Z95: f64 = 1.959_963_984_540_054;
pub const Z99: f64 = 2.575_829_303_548_900_4;

/// A binomial proportion with its Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub p: f64,
    pub lo: f64,
    pub hi: f64,
    pub z: f64,
}

impl Estimate {
    pub fn wilson(successes: u64, trials: u64, z: f64) -> Self {
        assert!(trials > 0 && successes <= trials);
        let n = trials as f64;
        let p = successes as f64 / n;
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
        let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
        Estimate { successes, trials, p, lo, hi, z }
    }

    pub fn overlaps(&self, other: &Estimate) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_intervals() {
        // 0 of 100 at 95%: upper limit z^2 / (n + z^2)
        let e = Estimate::wilson(0, 100, Z95);
        assert_eq!(e.lo, 0.0);
        assert!((e.hi - Z95 * Z95 / (100.0 + Z95 * Z95)).abs() < 1e-12);
        // 50 of 100 is symmetric about one half
        let e = Estimate::wilson(50, 100, Z99);
        assert!((e.lo + e.hi - 1.0).abs() < 1e-12);
        assert!((e.hi - 0.62472).abs() < 1e-4);
        let full = Estimate::wilson(10, 10, Z95);
        assert_eq!(full.hi, 1.0);
        assert!(full.overlaps(&e) == (full.lo <= e.hi));
    }
}
