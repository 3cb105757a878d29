//! Exact maximum fork forests via minimum-weight perfect matching.
//!
//! Each `x ∈ X` is split into a black port `x_b` and a white port `x_w`
//! joined by an edge of weight 1. `x_b` is adjacent (weight 0) to the `y`
//! with `c(xy) = b`, `x_w` to the `y` with `c(xy) = w`, and `Y` is completed
//! to a clique (plus a dummy vertex when `n` is odd so that a perfect
//! matching exists). A perfect matching of weight `w` then yields a fork
//! forest with `n − w` forks and vice versa.

use thiserror::Error;

use crate::coloring::{Color, Coloring, Fork, ForkForest, Side, Vertex};
use crate::matching::{self, Matching, MatchingError, WeightedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("matching and split map disagree on vertex count ({0} vs {1})")]
    SizeMismatch(usize, usize),
}

/// Vertex ids of the transformed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMap {
    /// `(x_b, x_w)` for each `x ∈ X`.
    pub ports: Vec<(usize, usize)>,
    /// Ids of `Y'`; the first `n` correspond to `y_0 .. y_{n-1}`.
    pub y_prime: Vec<usize>,
    /// Extra `Y'` vertex, present iff `n` is odd.
    pub dummy: Option<usize>,
}

impl SplitMap {
    pub fn n(&self) -> usize {
        self.ports.len()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.ports.len() + self.y_prime.len()
    }

    /// Index in `Y` of a graph vertex, if it is one of `y_0 .. y_{n-1}`.
    pub fn y_index(&self, id: usize) -> Option<usize> {
        let n = self.n();
        (2 * n..3 * n).contains(&id).then(|| id - 2 * n)
    }
}

/// Builds the weighted graph for forests centered on `side`. `Y` centers are
/// handled by running the `X` construction on the transposed coloring.
pub fn build_reduction(coloring: &Coloring, side: Side) -> (WeightedGraph, SplitMap) {
    match side {
        Side::X => build_x(coloring),
        Side::Y => build_x(&coloring.transpose()),
    }
}

fn build_x(coloring: &Coloring) -> (WeightedGraph, SplitMap) {
    let n = coloring.n();
    let ports: Vec<(usize, usize)> = (0..n).map(|x| (2 * x, 2 * x + 1)).collect();
    let y_len = n + n % 2;
    let y_prime: Vec<usize> = (2 * n..2 * n + y_len).collect();
    let dummy = (n % 2 == 1).then_some(3 * n);
    let mut graph = WeightedGraph::new(2 * n + y_len);

    let add = |g: &mut WeightedGraph, u, v, w| g.add_edge(u, v, w).expect("construction yields a simple graph");
    for (x, &(xb, xw)) in ports.iter().enumerate() {
        add(&mut graph, xb, xw, 1);
        for (y, &yv) in y_prime[..n].iter().enumerate() {
            let port = match coloring.color(x, y) {
                Color::Black => xb,
                Color::White => xw,
            };
            add(&mut graph, yv, port, 0);
        }
    }
    for (i, &u) in y_prime.iter().enumerate() {
        for &v in &y_prime[i + 1..] {
            add(&mut graph, u, v, 0);
        }
    }
    (graph, SplitMap { ports, y_prime, dummy })
}

/// Reads the fork forest off a perfect matching: one fork for every `x`
/// whose two ports are both matched into `Y`.
///
/// The forest is centered on `X` of the coloring the graph was built from;
/// for a `Side::Y` reduction that is the transposed coloring, so transpose
/// the result (as [`solve_exact`] does).
pub fn fork_of_matching(matching: &Matching, split: &SplitMap, graph: &WeightedGraph) -> Result<ForkForest, ReductionError> {
    if graph.vertex_count() != split.vertex_count() {
        return Err(ReductionError::SizeMismatch(graph.vertex_count(), split.vertex_count()));
    }
    matching.check_perfect(graph)?;
    let mate = matching.mates(graph.vertex_count());
    let mut forks = Vec::new();
    for (x, &(xb, xw)) in split.ports.iter().enumerate() {
        let yb = mate[xb].and_then(|v| split.y_index(v));
        let yw = mate[xw].and_then(|v| split.y_index(v));
        if let (Some(yb), Some(yw)) = (yb, yw) {
            forks.push(Fork {
                center: Vertex::x(x),
                leaf_black: Vertex::y(yb),
                leaf_white: Vertex::y(yw),
            });
        }
    }
    Ok(ForkForest {
        center_side: Side::X,
        forks,
    })
}

pub use crate::matching::matching_weight;

/// A maximum forest plus the optimal matching weight that certified it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSolution {
    pub forest: ForkForest,
    pub min_weight: u64,
    /// Optimal matching of the graph built for `side`.
    pub matching: Matching,
}

/// Maximum fork forest centered on `side`.
pub fn solve_exact(coloring: &Coloring, side: Side) -> ForkForest {
    solve_exact_with_weight(coloring, side).forest
}

pub fn solve_exact_with_weight(coloring: &Coloring, side: Side) -> ExactSolution {
    let (graph, split) = build_reduction(coloring, side);
    // all split edges plus a perfect matching of the even clique on Y'
    let matching = matching::min_weight_perfect_matching(&graph).expect("transformed graph always has a perfect matching");
    let min_weight = matching_weight(&matching, &graph).expect("solver returns graph edges");
    let forest = fork_of_matching(&matching, &split, &graph).expect("solver returns a perfect matching");
    debug_assert_eq!(min_weight as usize + forest.size(), coloring.n());
    let forest = match side {
        Side::X => forest,
        Side::Y => forest.transposed(),
    };
    ExactSolution {
        forest,
        min_weight,
        matching,
    }
}

/// `f(G, c)`: the best of the two center sides, preferring `X` on ties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BothSides {
    pub f_value: usize,
    pub witness: ForkForest,
    /// Optimal matching weight on the witness side.
    pub min_weight: u64,
    pub matching: Matching,
}

pub fn solve_both(coloring: &Coloring) -> BothSides {
    let x = solve_exact_with_weight(coloring, Side::X);
    let y = solve_exact_with_weight(coloring, Side::Y);
    let best = if y.forest.size() > x.forest.size() { y } else { x };
    BothSides {
        f_value: best.forest.size(),
        witness: best.forest,
        min_weight: best.min_weight,
        matching: best.matching,
    }
}
