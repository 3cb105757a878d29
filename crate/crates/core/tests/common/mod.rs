//! Reference implementations shared by the integration tests. Nothing here
//! calls into the solvers under test.
#![allow(dead_code)]

use fork_forest::matching::{BipartiteGraph, Matching, WeightedGraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// Calls `visit` with every perfect matching of `graph`.
pub fn for_each_perfect_matching(graph: &WeightedGraph, mut visit: impl FnMut(&[(usize, usize)])) {
    let n = graph.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &(u, v, _) in graph.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut used = vec![false; n];
    let mut chosen = Vec::new();
    enumerate(&adj, &mut used, &mut chosen, &mut visit);
}

fn enumerate(
    adj: &[Vec<usize>],
    used: &mut Vec<bool>,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    let Some(u) = used.iter().position(|b| !b) else {
        visit(chosen);
        return;
    };
    used[u] = true;
    for &v in &adj[u] {
        if used[v] {
            continue;
        }
        used[v] = true;
        chosen.push((u, v));
        enumerate(adj, used, chosen, visit);
        chosen.pop();
        used[v] = false;
    }
    used[u] = false;
}

/// Minimum perfect-matching weight by full enumeration.
pub fn brute_min_pm_weight(graph: &WeightedGraph) -> Option<u64> {
    let mut best: Option<u64> = None;
    for_each_perfect_matching(graph, |pm| {
        let w: u64 = pm.iter().map(|&(u, v)| u64::from(graph.weight(u, v).unwrap())).sum();
        best = Some(best.map_or(w, |b| b.min(w)));
    });
    best
}

/// A uniformly shuffled backtracking search for one perfect matching.
pub fn random_perfect_matching<R: Rng>(graph: &WeightedGraph, rng: &mut R) -> Option<Matching> {
    let n = graph.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &(u, v, _) in graph.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut mate = vec![None; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    if search(&adj, &order, &mut mate, rng) {
        Some(Matching::from_pairs((0..n).filter_map(|u| mate[u].filter(|&v| u < v).map(|v| (u, v)))).unwrap())
    } else {
        None
    }
}

fn search<R: Rng>(adj: &[Vec<usize>], order: &[usize], mate: &mut Vec<Option<usize>>, rng: &mut R) -> bool {
    let Some(&u) = order.iter().find(|&&u| mate[u].is_none()) else {
        return true;
    };
    let mut options: Vec<usize> = adj[u].iter().copied().filter(|&v| mate[v].is_none()).collect();
    options.shuffle(rng);
    for v in options {
        mate[u] = Some(v);
        mate[v] = Some(u);
        if search(adj, order, mate, rng) {
            return true;
        }
        mate[u] = None;
        mate[v] = None;
    }
    false
}

/// Random weighted graph on an even number (2..=max_vertices) of vertices
/// with a planted perfect matching.
pub fn random_graph_with_pm<R: Rng>(rng: &mut R, max_vertices: usize, max_weight: u32) -> WeightedGraph {
    let n = 2 * rng.gen_range(1..=max_vertices / 2);
    let density: f64 = rng.gen_range(0.1..0.9);
    let mut g = WeightedGraph::new(n);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    for pair in perm.chunks(2) {
        g.add_edge(pair[0], pair[1], rng.gen_range(0..=max_weight)).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(density) {
                g.add_edge(u, v, rng.gen_range(0..=max_weight)).unwrap();
            }
        }
    }
    g
}

pub fn random_bipartite<R: Rng>(rng: &mut R, max_side: usize) -> BipartiteGraph {
    let l = rng.gen_range(0..=max_side);
    let r = rng.gen_range(0..=max_side);
    let density: f64 = rng.gen_range(0.0..0.3);
    let mut edges = Vec::new();
    for a in 0..l {
        for b in 0..r {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    BipartiteGraph::new(l, r, edges)
}

/// Maximum bipartite matching size by simple augmenting paths.
pub fn kuhn_matching_size(graph: &BipartiteGraph) -> usize {
    fn try_augment(g: &BipartiteGraph, l: usize, seen: &mut [bool], mate_r: &mut [Option<usize>]) -> bool {
        for &r in g.neighbors(l) {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if mate_r[r].is_none() || try_augment(g, mate_r[r].unwrap(), seen, mate_r) {
                mate_r[r] = Some(l);
                return true;
            }
        }
        false
    }
    let mut mate_r = vec![None; graph.right_count()];
    (0..graph.left_count())
        .filter(|&l| try_augment(graph, l, &mut vec![false; graph.right_count()], &mut mate_r))
        .count()
}
