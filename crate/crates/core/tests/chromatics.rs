//! Coloring schemes checked against naive re-implementations.

use std::collections::HashMap;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pvcolor::chromatics::{
    build_order_dag, color_deterministic, color_randomized, color_randomized_with_symbols, det6, draw_symbols,
    predecessor_set, verify_proper, RandomizedConfig,
};
use pvcolor::geometry::{delaunay, delaunay_points, sample_poisson};
use pvcolor::peeling::{Level, LevelAssignment, PeelConfig};
use pvcolor::{Graph, Point, Triangulation, Window};

fn sample(h: f64, seed: u64) -> (Triangulation, Window) {
    let ps = sample_poisson(Window::centered(h).unwrap(), 2.0, 1.0, seed).unwrap();
    (delaunay(&ps).unwrap(), ps.padded_window())
}

/// Levels by recounting degrees from scratch every round.
fn naive_levels(adj: &[Vec<usize>]) -> Vec<u32> {
    let n = adj.len();
    let mut level = vec![u32::MAX; n];
    let mut round = 0;
    while level.contains(&u32::MAX) {
        let doomed: Vec<usize> = (0..n)
            .filter(|&v| level[v] == u32::MAX && adj[v].iter().filter(|&&w| level[w] == u32::MAX).count() <= 5)
            .collect();
        assert!(!doomed.is_empty(), "naive peeling stalled");
        for v in doomed {
            level[v] = round;
        }
        round += 1;
    }
    level
}

fn naive_colors(tri: &Triangulation, areas: &[f64]) -> Vec<u32> {
    let n = tri.len();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| tri.neighbors(v).to_vec()).collect();
    let level = naive_levels(&adj);
    let pts = tri.vertices();
    let key = |v: usize| (level[v], -areas[v], -pts[v].x, -pts[v].y);
    // u -> v when v ranks higher
    let out: Vec<Vec<usize>> = (0..n)
        .map(|u| adj[u].iter().copied().filter(|&v| key(v).partial_cmp(&key(u)).unwrap().is_gt()).collect())
        .collect();
    fn f(v: usize, out: &[Vec<usize>], memo: &mut HashMap<usize, u32>) -> u32 {
        if let Some(&c) = memo.get(&v) {
            return c;
        }
        let used: Vec<u32> = out[v].iter().map(|&w| f(w, out, memo)).collect();
        let c = (0..).find(|c| !used.contains(c)).unwrap();
        memo.insert(v, c);
        c
    }
    let mut memo = HashMap::new();
    (0..n).map(|v| f(v, &out, &mut memo)).collect()
}

#[test]
fn det6_matches_naive_recursion() {
    for seed in 0..20 {
        let (tri, clip) = sample(8.0, seed);
        let d = det6(&tri, &clip).unwrap();
        let areas: Vec<f64> = d.cells.iter().map(|c| c.area).collect();
        assert_eq!(d.coloring.colors, naive_colors(&tri, &areas), "seed {seed}");
        assert!(d.dag.max_out_degree() <= 5);
        assert!(d.coloring.colors.iter().all(|&c| c < 6));
        let reliable = d.reliable().unwrap();
        assert!(verify_proper(&d.coloring.colors, tri.adjacency(), Some(&reliable)).ok);
    }
}

#[test]
fn recursion_is_independent_of_topological_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..5 {
        let (tri, clip) = sample(10.0, 100 + seed);
        let d = det6(&tri, &clip).unwrap();
        let n = d.dag.len();
        for _ in 0..5 {
            let mut pending: Vec<usize> = (0..n).map(|v| d.dag.out_degree(v)).collect();
            let mut incoming = vec![Vec::new(); n];
            for u in 0..n {
                for &v in d.dag.out_neighbors(u) {
                    incoming[v].push(u);
                }
            }
            let mut ready: Vec<usize> = (0..n).filter(|&v| pending[v] == 0).collect();
            let mut colors = vec![u32::MAX; n];
            while !ready.is_empty() {
                let v = *ready.choose(&mut rng).unwrap();
                ready.retain(|&w| w != v);
                let used: Vec<u32> = d.dag.out_neighbors(v).iter().map(|&w| colors[w]).collect();
                colors[v] = (0..).find(|c| !used.contains(c)).unwrap();
                for &u in &incoming[v] {
                    pending[u] -= 1;
                    if pending[u] == 0 {
                        ready.push(u);
                    }
                }
            }
            assert_eq!(colors, d.coloring.colors);
        }
    }
}

#[test]
fn triangle_by_hand() {
    let tri = delaunay_points(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)]).unwrap();
    let levels = LevelAssignment { levels: vec![Level::Peeled(0); 3], rounds_executed: 1, config: PeelConfig::full(5) };
    let areas = [3.0, 2.0, 1.0];
    let dag = build_order_dag(&tri, &levels, &areas).unwrap();
    assert_eq!(color_deterministic(&dag).unwrap().colors, vec![2, 1, 0]);
    let mut preds = predecessor_set(&dag, 0, tri.vertices()).vertices;
    preds.sort_unstable();
    assert_eq!(preds, vec![1, 2]);
    assert!(predecessor_set(&dag, 2, tri.vertices()).vertices.is_empty());

    let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
    assert!(verify_proper(&[0, 1, 2], &g, None).ok);
    assert_eq!(verify_proper(&[0, 0, 1], &g, None).violations.len(), 1);
}

/// Lexicographically first proper 4-coloring by plain backtracking.
fn lex_first(adj: &Graph, external: &[bool]) -> Option<Vec<u8>> {
    fn go(v: usize, adj: &Graph, external: &[bool], colors: &mut Vec<u8>) -> bool {
        if v == adj.len() {
            return true;
        }
        for c in u8::from(external[v])..4 {
            if adj.neighbors(v).iter().all(|&w| w >= v || colors[w] != c) {
                colors[v] = c;
                if go(v + 1, adj, external, colors) {
                    return true;
                }
            }
        }
        false
    }
    let mut colors = vec![0; adj.len()];
    go(0, adj, external, &mut colors).then_some(colors)
}

#[test]
fn forced_single_symbol_matches_exhaustive_oracle() {
    for seed in 0..10 {
        let ps = sample_poisson(Window::centered(3.0).unwrap(), 0.0, 1.0, 300 + seed).unwrap();
        if ps.len() < 3 {
            continue;
        }
        let tri = delaunay(&ps).unwrap();
        let n = tri.len();
        let areas: Vec<f64> = (0..n).map(|v| (v * 7919 % 101) as f64 + 1.0).collect();
        let cfg = RandomizedConfig::new(2);
        let r = color_randomized_with_symbols(&tri, &areas, vec![1; n], &cfg).unwrap();
        assert_eq!(r.components.len(), 1);

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| areas[a].total_cmp(&areas[b]));
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let sub = Graph::from_edges(n, tri.edges().map(|(u, v)| (rank[u], rank[v])));
        let external: Vec<bool> = order.iter().map(|&v| tri.is_hull(v)).collect();
        let oracle = lex_first(&sub, &external).unwrap();
        let got: Vec<u8> = order.iter().map(|&v| r.coloring.colors[v] as u8).collect();
        assert_eq!(got, oracle, "seed {seed}");
        assert!((0..n).all(|v| !tri.is_hull(v) || r.coloring.colors[v] != 0));
    }
}

#[test]
fn symbol_draws_are_uniform() {
    // 2 degrees of freedom, 0.1% critical value
    let crit = 13.816;
    let chi2 = |counts: &[u64]| {
        let total: u64 = counts.iter().sum();
        let e = total as f64 / counts.len() as f64;
        counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum::<f64>()
    };
    let mut within = [0u64; 3];
    for s in draw_symbols(30_000, 3, 5) {
        within[s as usize - 1] += 1;
    }
    assert!(chi2(&within) < crit, "{within:?}");
    let mut across = [0u64; 3];
    for seed in 0..3000 {
        across[draw_symbols(1, 3, seed)[0] as usize - 1] += 1;
    }
    assert!(chi2(&across) < crit, "{across:?}");
}

#[test]
fn randomized_colorings_never_join_zeros_across_components() {
    for (seed, symbols) in [(1, 2), (2, 2), (3, 3), (4, 3)] {
        let (tri, clip) = sample(12.0, 500 + seed);
        let areas: Vec<f64> = pvcolor::geometry::voronoi_cells(&tri, &clip).unwrap().iter().map(|c| c.area).collect();
        let r = color_randomized(&tri, &areas, seed, &RandomizedConfig::new(symbols)).unwrap();
        assert!(verify_proper(&r.coloring.colors, tri.adjacency(), None).ok);
        assert!(r.coloring.within_palette());
        for (u, v) in tri.edges() {
            if r.symbols[u] != r.symbols[v] {
                assert!(r.coloring.colors[u] != 0 || r.coloring.colors[v] != 0, "0-0 edge {u} {v}");
            }
        }
    }
}
