//! Synchronous deletion of low-degree vertices.
//!
//! Round `k` removes, all at once, every alive vertex (inside the optional
//! region) whose degree among alive vertices is at most `max_deg`. A vertex
//! removed in round `k` gets level `k`; a vertex never removed is a
//! [`Level::Survivor`].

use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Triangulation, Window};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    Peeled(u32),
    Survivor,
}

impl Level {
    pub fn peeled(self) -> Option<u32> {
        match self {
            Level::Peeled(k) => Some(k),
            Level::Survivor => None,
        }
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Level::Peeled(k) => write!(f, "{k}"),
            Level::Survivor => f.write_str("SURVIVOR"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelConfig {
    pub max_deg: usize,
    /// Only vertices inside this window may be deleted.
    pub region: Option<Window>,
    pub max_rounds: Option<usize>,
}

impl PeelConfig {
    /// Unrestricted peeling to the fixpoint.
    pub fn full(max_deg: usize) -> Self {
        PeelConfig { max_deg, region: None, max_rounds: None }
    }

    pub fn restricted(max_deg: usize, region: Window) -> Self {
        PeelConfig { max_deg, region: Some(region), max_rounds: None }
    }

    pub fn with_max_rounds(mut self, rounds: usize) -> Self {
        self.max_rounds = Some(rounds);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub levels: Vec<Level>,
    /// Rounds that deleted at least one vertex.
    pub rounds_executed: usize,
    pub config: PeelConfig,
}

impl LevelAssignment {
    pub fn survivors(&self) -> Vec<usize> {
        (0..self.levels.len()).filter(|&v| self.levels[v] == Level::Survivor).collect()
    }

    pub fn all_peeled(&self) -> bool {
        self.levels.iter().all(|l| *l != Level::Survivor)
    }

    /// Vertices still present after `m` rounds.
    pub fn alive_after(&self, m: usize) -> Vec<bool> {
        self.levels
            .iter()
            .map(|l| match l {
                Level::Peeled(k) => (*k as usize) >= m,
                Level::Survivor => true,
            })
            .collect()
    }
}

/// One synchronous round: the returned mask drops every alive, eligible
/// vertex whose alive-degree is at most `max_deg`.
pub fn peel_step(adj: &Graph, alive: &[bool], region: Option<&[bool]>, max_deg: usize) -> Vec<bool> {
    let eligible = |v: usize| region.is_none_or(|r| r[v]);
    let remove: Vec<bool> = (0..adj.len())
        .map(|v| {
            alive[v] && eligible(v) && adj.neighbors(v).iter().filter(|&&w| alive[w]).count() <= max_deg
        })
        .collect();
    alive.iter().zip(&remove).map(|(&a, &r)| a && !r).collect()
}

/// Peels an abstract graph. `region` marks deletable vertices (all if `None`).
pub fn peel_graph(adj: &Graph, region: Option<&[bool]>, max_deg: usize, max_rounds: Option<usize>) -> (Vec<Level>, usize) {
    let n = adj.len();
    let mut levels = vec![Level::Survivor; n];
    let mut degree: Vec<usize> = (0..n).map(|v| adj.degree(v)).collect();
    let eligible = |v: usize| region.is_none_or(|r| r[v]);
    let mut candidates: Vec<usize> = (0..n).filter(|&v| eligible(v)).collect();
    let mut stamp = vec![usize::MAX; n];
    let mut rounds = 0usize;
    let limit = max_rounds.unwrap_or(usize::MAX);
    while rounds < limit {
        let doomed: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&v| levels[v] == Level::Survivor && degree[v] <= max_deg)
            .collect();
        if doomed.is_empty() {
            break;
        }
        for &v in &doomed {
            levels[v] = Level::Peeled(rounds as u32);
        }
        candidates.clear();
        for &v in &doomed {
            for &w in adj.neighbors(v) {
                degree[w] -= 1;
                if levels[w] == Level::Survivor && eligible(w) && stamp[w] != rounds {
                    stamp[w] = rounds;
                    candidates.push(w);
                }
            }
        }
        rounds += 1;
    }
    (levels, rounds)
}

/// Mask of vertices inside a closed window.
pub fn region_mask(points: &[Point], region: &Window) -> Vec<bool> {
    points.iter().map(|p| region.contains(p)).collect()
}

/// Peels a Delaunay triangulation according to `config`.
pub fn peel_to_core(tri: &Triangulation, config: &PeelConfig) -> LevelAssignment {
    let mask = config.region.as_ref().map(|w| region_mask(tri.vertices(), w));
    let (levels, rounds) = peel_graph(tri.adjacency(), mask.as_deref(), config.max_deg, config.max_rounds);
    LevelAssignment { levels, rounds_executed: rounds, config: config.clone() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn least(&self) -> usize {
        self.vertices[0]
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn size_of(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}

/// Connected components of the subgraph induced by `subset`, ordered by
/// least vertex id.
pub fn components(adj: &Graph, subset: &[usize]) -> Vec<Component> {
    let n = adj.len();
    let mut member = vec![false; n];
    for &v in subset {
        member[v] = true;
    }
    components_of_mask(adj, &member)
}

/// Components of the subgraph induced by a vertex mask.
pub fn components_of_mask(adj: &Graph, member: &[bool]) -> Vec<Component> {
    let n = adj.len();
    let mut dsu = DisjointSet::new(n);
    for u in 0..n {
        if member[u] {
            for &w in adj.neighbors(u) {
                if w > u && member[w] {
                    dsu.union(u, w);
                }
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut out: Vec<Component> = Vec::new();
    for v in 0..n {
        if !member[v] {
            continue;
        }
        let r = dsu.find(v);
        if index[r] == usize::MAX {
            index[r] = out.len();
            out.push(Component { vertices: Vec::new() });
        }
        out[index[r]].vertices.push(v);
    }
    out
}
