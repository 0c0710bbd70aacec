use serde::{Deserialize, Serialize};

use super::order::AreaOrder;
use super::{Coloring, Scheme};
use crate::geometry::boundary::outer_walk;
use crate::geometry::Triangulation;
use crate::graph::Graph;
use crate::peeling::{components_of_mask, Component};
use crate::rng::{below, seeded, Stream};
use crate::{Error, Result};

pub const DEFAULT_COMPONENT_CAP: usize = 100_000;
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomizedConfig {
    pub num_symbols: u32,
    pub component_cap: usize,
    /// Backtracking assignments allowed per component.
    pub node_budget: u64,
}

impl RandomizedConfig {
    pub fn new(num_symbols: u32) -> Self {
        RandomizedConfig { num_symbols, component_cap: DEFAULT_COMPONENT_CAP, node_budget: DEFAULT_NODE_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomizedColoring {
    pub coloring: Coloring,
    pub symbols: Vec<u32>,
    /// Same-symbol components, ordered by least vertex.
    pub components: Vec<Component>,
    pub largest_component: usize,
}

/// Independent uniform symbols in `1..=num_symbols`, one per vertex.
pub fn draw_symbols(n: usize, num_symbols: u32, seed: u64) -> Vec<u32> {
    let mut rng = seeded(seed, Stream::Symbols);
    (0..n).map(|_| 1 + below(&mut rng, num_symbols as u64) as u32).collect()
}

/// Draws symbols from `seed` and colors each same-symbol component from its
/// own three colors plus the shared color 0, never using 0 on a component's
/// outer face.
pub fn color_randomized(tri: &Triangulation, areas: &[f64], seed: u64, cfg: &RandomizedConfig) -> Result<RandomizedColoring> {
    if cfg.num_symbols < 2 {
        return Err(Error::param(format!("need at least 2 symbols, got {}", cfg.num_symbols)));
    }
    let symbols = draw_symbols(tri.len(), cfg.num_symbols, seed);
    color_randomized_with_symbols(tri, areas, symbols, cfg)
}

/// Same as [`color_randomized`] with caller-chosen symbols.
pub fn color_randomized_with_symbols(
    tri: &Triangulation,
    areas: &[f64],
    symbols: Vec<u32>,
    cfg: &RandomizedConfig,
) -> Result<RandomizedColoring> {
    let n = tri.len();
    if symbols.len() != n || areas.len() != n {
        return Err(Error::contract("symbols and areas must cover every vertex"));
    }
    if let Some(&s) = symbols.iter().find(|&&s| s == 0 || s > cfg.num_symbols) {
        return Err(Error::param(format!("symbol {s} outside 1..={}", cfg.num_symbols)));
    }
    // edges between different symbols are dropped by masking per symbol
    let same = Graph::from_lists(
        &(0..n)
            .map(|u| tri.neighbors(u).iter().copied().filter(|&w| symbols[w] == symbols[u]).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    let components = components_of_mask(&same, &vec![true; n]);
    let order = AreaOrder { areas, points: tri.vertices() };
    let mut colors = vec![0u32; n];
    let mut local = vec![usize::MAX; n];
    let mut largest = 0;
    for (ci, comp) in components.iter().enumerate() {
        let size = comp.size();
        largest = largest.max(size);
        if size > cfg.component_cap {
            return Err(Error::OversizedComponent {
                component: ci,
                least_vertex: comp.least(),
                size,
                reason: format!("exceeds the cap of {}", cfg.component_cap),
            });
        }
        let mut verts = comp.vertices.clone();
        verts.sort_by(|&a, &b| order.cmp(a, b));
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let sym = symbols[comp.least()];
        let lists: Vec<Vec<usize>> = verts
            .iter()
            .map(|&v| tri.neighbors(v).iter().filter(|&&w| symbols[w] == sym).map(|&w| local[w]).collect())
            .collect();
        let sub = Graph::from_lists(&lists);
        let mut external = vec![false; size];
        for v in outer_walk(tri, &comp.vertices, |w| symbols[w] == sym)? {
            external[local[v]] = true;
        }
        let c4 = four_color_component(&sub, &external, cfg.node_budget).map_err(|e| match e {
            Error::OversizedComponent { reason, .. } => {
                Error::OversizedComponent { component: ci, least_vertex: comp.least(), size, reason }
            }
            other => other,
        })?;
        let base = 3 * (sym - 1);
        for (i, &v) in verts.iter().enumerate() {
            colors[v] = if c4[i] == 0 { 0 } else { base + c4[i] as u32 };
        }
    }
    Ok(RandomizedColoring {
        coloring: Coloring { colors, scheme: Scheme::RandKozma { num_symbols: cfg.num_symbols } },
        symbols,
        components,
        largest_component: largest,
    })
}

/// Lexicographically smallest proper coloring with colors `0..4` in vertex
/// order `0..n`, with color 0 banned on `external` vertices.
///
/// Vertices are fixed one at a time. A complete coloring agreeing with the
/// fixed prefix is kept as a witness, so only colors below the witness color
/// need a completion search, and those are first refuted on growing balls
/// around the vertex. Fails with [`Error::OversizedComponent`] once
/// `node_budget` search nodes are spent.
pub fn four_color_component(adj: &Graph, external: &[bool], node_budget: u64) -> Result<Vec<u8>> {
    let n = adj.len();
    let mut s = Completion::new(adj, external, node_budget);
    let mut witness = vec![NONE; n];
    if n == 0 {
        return Ok(witness);
    }
    let all: Vec<usize> = (0..n).collect();
    match s.complete(&all)? {
        Some(assign) => {
            for (v, c) in assign {
                witness[v] = c;
                s.hint[v] = c;
            }
        }
        None => return Err(Error::Invariant("component has no admissible 4-coloring".into())),
    }
    let mut seeds = Vec::new();
    for v in 0..n {
        let allowed = s.base[v] & !s.neighbor_mask(v);
        for c in 0..witness[v] {
            if allowed & (1 << c) == 0 {
                continue;
            }
            s.color[v] = c;
            seeds.clear();
            seeds.extend(adj.neighbors(v).iter().copied().filter(|&w| s.color[w] == NONE));
            if let Some(assign) = s.complete(&seeds)? {
                witness[v] = c;
                for (w, c) in assign {
                    witness[w] = c;
                    s.hint[w] = c;
                }
                break;
            }
            s.color[v] = NONE;
        }
        s.color[v] = witness[v];
    }
    Ok(witness)
}

const NONE: u8 = u8::MAX;

enum Outcome {
    Found(Vec<(usize, u8)>),
    Infeasible,
    GaveUp,
}

/// Decides whether the current partial coloring extends to the uncolored
/// vertices reachable from some seeds.
struct Completion<'a> {
    adj: &'a Graph,
    base: Vec<u8>,
    color: Vec<u8>,
    /// Preferred color per vertex, taken from the last full coloring.
    hint: Vec<u8>,
    budget: u64,
    spent: u64,
    stamp: Vec<u32>,
    epoch: u32,
    rank: Vec<u32>,
    dom: Vec<u8>,
    live: Vec<u32>,
    in_core: Vec<bool>,
}

impl<'a> Completion<'a> {
    fn new(adj: &'a Graph, external: &[bool], budget: u64) -> Self {
        let n = adj.len();
        Completion {
            adj,
            base: external.iter().map(|&e| if e { 0b1110 } else { 0b1111 }).collect(),
            color: vec![NONE; n],
            hint: vec![NONE; n],
            budget,
            spent: 0,
            stamp: vec![0; n],
            epoch: 0,
            rank: vec![0; n],
            dom: vec![0; n],
            live: vec![0; n],
            in_core: vec![false; n],
        }
    }

    fn neighbor_mask(&self, v: usize) -> u8 {
        self.adj.neighbors(v).iter().filter(|&&w| self.color[w] != NONE).fold(0, |m, &w| m | 1 << self.color[w])
    }

    fn exhausted(&self) -> Error {
        Error::OversizedComponent {
            component: 0,
            least_vertex: 0,
            size: self.adj.len(),
            reason: format!("search budget of {} nodes exhausted", self.budget),
        }
    }

    /// Exact answer for the whole reachable region. Balls of growing radius
    /// are tried first: a ball that cannot be colored refutes the region.
    fn complete(&mut self, seeds: &[usize]) -> Result<Option<Vec<(usize, u8)>>> {
        let mut depth = 2u32;
        let mut cap = 256u64;
        loop {
            let (ball, truncated) = self.solve(seeds, depth, cap);
            match ball {
                Outcome::Infeasible => return Ok(None),
                Outcome::Found(a) if !truncated => return Ok(Some(a)),
                _ => {}
            }
            if truncated {
                match self.solve(seeds, u32::MAX, cap).0 {
                    Outcome::Found(a) => return Ok(Some(a)),
                    Outcome::Infeasible => return Ok(None),
                    Outcome::GaveUp => {}
                }
            }
            if self.spent > self.budget {
                return Err(self.exhausted());
            }
            depth = depth.saturating_mul(2);
            cap = cap.saturating_mul(4);
        }
    }

    /// Searches the uncolored vertices within `depth` hops of the seeds,
    /// ignoring everything beyond. Also reports whether the ball stopped
    /// short of the full region.
    fn solve(&mut self, seeds: &[usize], depth: u32, cap: u64) -> (Outcome, bool) {
        self.epoch += 1;
        let ep = self.epoch;
        let mut region = Vec::new();
        for &s in seeds {
            if self.color[s] == NONE && self.stamp[s] != ep {
                self.stamp[s] = ep;
                self.rank[s] = 0;
                region.push(s);
            }
        }
        let mut truncated = false;
        let mut head = 0;
        while head < region.len() {
            let u = region[head];
            head += 1;
            for &w in self.adj.neighbors(u) {
                if self.color[w] == NONE && self.stamp[w] != ep {
                    if self.rank[u] >= depth {
                        truncated = true;
                        continue;
                    }
                    self.stamp[w] = ep;
                    self.rank[w] = self.rank[u] + 1;
                    region.push(w);
                }
            }
        }
        for &v in &region {
            let d = self.base[v] & !self.neighbor_mask(v);
            if d == 0 {
                return (Outcome::Infeasible, truncated);
            }
            self.dom[v] = d;
            self.live[v] = self.adj.neighbors(v).iter().filter(|&&w| self.stamp[w] == ep && self.color[w] == NONE).count() as u32;
            self.in_core[v] = true;
        }
        // vertices with more colors left than neighbors can be colored last
        let mut removed = Vec::new();
        let mut queue: Vec<usize> = region.iter().copied().filter(|&v| self.dom[v].count_ones() > self.live[v]).collect();
        while let Some(v) = queue.pop() {
            if !self.in_core[v] {
                continue;
            }
            self.in_core[v] = false;
            removed.push(v);
            for &w in self.adj.neighbors(v) {
                if self.stamp[w] == ep && self.in_core[w] {
                    self.live[w] -= 1;
                    if self.dom[w].count_ones() == self.live[w] + 1 {
                        queue.push(w);
                    }
                }
            }
        }
        let core: Vec<usize> = region.iter().copied().filter(|&v| self.in_core[v]).collect();
        let outcome = self.search(&core, cap);
        for &v in &region {
            self.in_core[v] = false;
        }
        let Outcome::Found(mut assign) = outcome else {
            return (outcome, truncated);
        };
        for &(v, c) in &assign {
            self.color[v] = c;
        }
        for &v in removed.iter().rev() {
            let c = (self.base[v] & !self.neighbor_mask(v)).trailing_zeros() as u8;
            self.color[v] = c;
            assign.push((v, c));
        }
        for &(v, _) in &assign {
            self.color[v] = NONE;
        }
        (Outcome::Found(assign), truncated)
    }

    /// Depth-first search over the core, most constrained vertex first and
    /// nearest to the seeds among equals.
    fn search(&mut self, core: &[usize], cap: u64) -> Outcome {
        struct Frame {
            v: usize,
            left: u8,
            pruned: Vec<usize>,
        }
        let mut assigned = 0usize;
        let mut stack: Vec<Frame> = Vec::new();
        let mut nodes = 0u64;
        'outer: loop {
            if assigned == core.len() {
                let out = core.iter().map(|&v| (v, self.color[v])).collect();
                for &v in core {
                    self.color[v] = NONE;
                }
                return Outcome::Found(out);
            }
            let v = core
                .iter()
                .copied()
                .filter(|&v| self.color[v] == NONE)
                .min_by_key(|&v| (self.dom[v].count_ones(), self.rank[v], v))
                .unwrap();
            stack.push(Frame { v, left: self.dom[v], pruned: Vec::new() });
            loop {
                let Some(top) = stack.last_mut() else {
                    return Outcome::Infeasible;
                };
                let v = top.v;
                if self.color[v] != NONE {
                    let c = self.color[v];
                    for &w in &top.pruned {
                        self.dom[w] |= 1 << c;
                    }
                    top.pruned.clear();
                    self.color[v] = NONE;
                    assigned -= 1;
                }
                if top.left == 0 {
                    stack.pop();
                    continue;
                }
                if nodes >= cap || self.spent >= self.budget {
                    // unwind so colors and domains are restored
                    while let Some(f) = stack.pop() {
                        if self.color[f.v] != NONE {
                            let c = self.color[f.v];
                            for &w in &f.pruned {
                                self.dom[w] |= 1 << c;
                            }
                            self.color[f.v] = NONE;
                        }
                    }
                    self.spent += 1;
                    return Outcome::GaveUp;
                }
                let h = self.hint[v];
                let c = if h != NONE && top.left & (1 << h) != 0 { h } else { top.left.trailing_zeros() as u8 };
                top.left &= !(1 << c);
                nodes += 1;
                self.spent += 1;
                let mut wiped = false;
                for &w in self.adj.neighbors(v) {
                    if self.in_core[w] && self.color[w] == NONE && self.dom[w] & (1 << c) != 0 {
                        self.dom[w] &= !(1 << c);
                        top.pruned.push(w);
                        wiped |= self.dom[w] == 0;
                    }
                }
                self.color[v] = c;
                assigned += 1;
                if !wiped {
                    continue 'outer;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Smallest proper coloring by brute-force enumeration in lexicographic order.
    fn brute(adj: &Graph, external: &[bool]) -> Option<Vec<u8>> {
        let n = adj.len();
        let total = 4usize.pow(n as u32);
        (0..total).find_map(|code| {
            // most significant digit is vertex 0
            let col: Vec<u8> = (0..n).map(|i| ((code / 4usize.pow((n - 1 - i) as u32)) % 4) as u8).collect();
            let ok = (0..n).all(|v| !(external[v] && col[v] == 0))
                && adj.edges().all(|(u, w)| col[u] != col[w]);
            ok.then_some(col)
        })
    }

    #[test]
    fn single_vertex_and_triangle() {
        let one = Graph::from_lists(&[Vec::<usize>::new()]);
        assert_eq!(four_color_component(&one, &[true], 100).unwrap(), vec![1]);
        let k3 = fixtures::complete(3);
        assert_eq!(four_color_component(&k3, &[true; 3], 100).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn wheel_hub_takes_zero() {
        let (_, w) = fixtures::wheel(4);
        let g = w.graph();
        let ext = [true, true, true, true, false];
        let got = four_color_component(&g, &ext, 1000).unwrap();
        assert_eq!(Some(got.clone()), brute(&g, &ext));
        assert!(got[..4].iter().all(|&c| c != 0));
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.random_range(1..8);
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(0.45)).collect();
            let g = Graph::from_edges(n, edges);
            let ext: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            match brute(&g, &ext) {
                Some(expect) => assert_eq!(four_color_component(&g, &ext, 1_000_000).unwrap(), expect),
                None => assert!(four_color_component(&g, &ext, 1_000_000).is_err()),
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        // K5 is not 4-colorable, so the search must give up
        let k5 = fixtures::complete(5);
        let err = four_color_component(&k5, &[false; 5], 3).unwrap_err();
        assert!(matches!(err, Error::OversizedComponent { .. }));
    }
}
