use std::collections::VecDeque;

use super::predicates::orient;
use super::Triangulation;
use crate::{Error, Result};

/// Vertices on the unbounded face of the subgraph induced by `subset`, in
/// boundary-walk order (first visits only), starting at the lexicographically
/// smallest site.
///
/// The induced map inherits its rotation system from the triangulation.
/// Cut vertices are visited more than once by the walk but are reported once.
pub fn outer_boundary(tri: &Triangulation, subset: &[usize]) -> Result<Vec<usize>> {
    let mut members = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() {
        return Err(Error::contract("outer boundary of an empty vertex set"));
    }
    if let Some(&v) = members.iter().find(|&&v| v >= tri.len()) {
        return Err(Error::contract(format!("vertex {v} is not in the triangulation")));
    }
    let inside = |v: usize| members.binary_search(&v).is_ok();
    check_connected(tri, &members, &inside)?;
    outer_walk(tri, &members, inside)
}

fn check_connected(tri: &Triangulation, members: &[usize], inside: &impl Fn(usize) -> bool) -> Result<()> {
    let mut seen = vec![false; members.len()];
    let idx = |v: usize| members.binary_search(&v).unwrap();
    let mut queue = VecDeque::from([members[0]]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &w in tri.neighbors(u) {
            if inside(w) && !seen[idx(w)] {
                seen[idx(w)] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    if count != members.len() {
        return Err(Error::contract(format!(
            "vertex subset is disconnected ({count} of {} reachable)",
            members.len()
        )));
    }
    Ok(())
}

/// Boundary walk with the unbounded face kept on the left. `members` must be
/// non-empty and connect in the triangulation.
pub(crate) fn outer_walk(
    tri: &Triangulation,
    members: &[usize],
    inside: impl Fn(usize) -> bool,
) -> Result<Vec<usize>> {
    let pts = tri.vertices();
    let start = *members.iter().min_by(|&&a, &&b| pts[a].lex_cmp(&pts[b])).unwrap();
    let mut first: Option<usize> = None;
    for &w in tri.rotation(start) {
        if !inside(w) {
            continue;
        }
        // all neighbors lie in the half plane right of the start site; keep
        // the one with the largest polar angle
        first = match first {
            Some(b) if orient(&pts[start], &pts[b], &pts[w]) <= 0.0 => Some(b),
            _ => Some(w),
        };
    }
    let Some(first) = first else {
        return Ok(vec![start]);
    };
    let cw_successor = |w: usize, from: usize| -> usize {
        let ring = tri.rotation(w);
        let pos = ring.iter().position(|&x| x == from).expect("rotation contains neighbor");
        let m = ring.len();
        (1..=m).map(|k| ring[(pos + m - k) % m]).find(|&x| inside(x)).unwrap_or(from)
    };
    let mut visited: Vec<usize> = vec![start];
    let mut seen = std::collections::HashSet::from([start]);
    let (mut u, mut w) = (start, first);
    let limit = 2 * tri.num_edges() + 2;
    for _ in 0..limit {
        if seen.insert(w) {
            visited.push(w);
        }
        let z = cw_successor(w, u);
        (u, w) = (w, z);
        if u == start && w == first {
            return Ok(visited);
        }
    }
    Err(Error::Invariant("outer face walk did not close".into()))
}
