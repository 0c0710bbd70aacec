//! Exact orientation and incircle signs.
//!
//! The determinants are evaluated with Shewchuk's adaptive-precision
//! expansions (floating-point filter first, exact fallback), so the returned
//! sign is always the sign of the exact real determinant of the `f64` inputs.
//! Exact co-circularity is resolved by a symbolic perturbation of the lifted
//! coordinate ordered by vertex id, which makes every incircle decision
//! strict and consistent.

use robust::Coord;

use super::Point;

#[inline]
fn c(p: &Point) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

/// Positive if `a, b, c` turn counter-clockwise, negative if clockwise, zero
/// if collinear. The magnitude is approximately twice the signed area.
#[inline]
pub fn orient(a: &Point, b: &Point, p: &Point) -> f64 {
    robust::orient2d(c(a), c(b), c(p))
}

/// Positive if `d` lies strictly inside the circle through the
/// counter-clockwise triangle `a, b, c`, negative if outside, zero if on it.
#[inline]
pub fn incircle(a: &Point, b: &Point, c_: &Point, d: &Point) -> f64 {
    robust::incircle(c(a), c(b), c(c_), c(d))
}

/// Whether `pts[q]` is inside the circumcircle of the counter-clockwise
/// triangle `tri` after symbolic perturbation.
///
/// When the exact determinant vanishes, point `i` is lifted by `eps^(N - i)`,
/// so the vertex with the largest id dominates. Expanding the perturbed
/// determinant, the coefficient of a vertex's perturbation is (up to sign)
/// the orientation of the other three points; the first non-zero one in
/// decreasing id order decides. Two terms always suffice because at most two
/// of the four orientations can vanish when the triangle is non-degenerate.
pub fn in_circle_perturbed(pts: &[Point], tri: [usize; 3], q: usize) -> bool {
    let [i0, i1, i2] = tri;
    let (p0, p1, p2, p) = (&pts[i0], &pts[i1], &pts[i2], &pts[q]);
    let det = incircle(p0, p1, p2, p);
    if det != 0.0 {
        return det > 0.0;
    }
    // (vertex id, role) sorted by decreasing id
    let mut order = [(i0, 0u8), (i1, 1), (i2, 2), (q, 3)];
    order.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    for &(_, role) in order.iter().take(3) {
        let o = match role {
            3 => return false,
            2 => orient(p0, p1, p),
            1 => orient(p0, p, p2),
            _ => orient(p, p1, p2),
        };
        if o != 0.0 {
            return o > 0.0;
        }
    }
    false
}

/// `p` strictly inside the closed segment `a`-`b` interior, assuming the
/// three points are collinear.
#[inline]
pub fn strictly_between(a: &Point, b: &Point, p: &Point) -> bool {
    if a.x != b.x {
        (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x)
    } else {
        (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y)
    }
}

/// `p` strictly inside the triangle `a, b, c` (either orientation).
pub fn strictly_inside_triangle(a: &Point, b: &Point, c_: &Point, p: &Point) -> bool {
    let o1 = orient(a, b, p);
    let o2 = orient(b, c_, p);
    let o3 = orient(c_, a, p);
    (o1 > 0.0 && o2 > 0.0 && o3 > 0.0) || (o1 < 0.0 && o2 < 0.0 && o3 < 0.0)
}
