//! Matching engines.
//!
//! * [`min_weight_perfect_matching`] runs a primal-dual blossom algorithm on a
//!   general graph with non-negative integer weights.
//! * [`max_bipartite_matching`] is Hopcroft-Karp, and [`koenig_cover`] turns a
//!   maximum bipartite matching into a minimum vertex cover.

mod bipartite;
mod blossom;

use std::collections::HashMap;

use thiserror::Error;

pub use bipartite::{koenig_cover, max_bipartite_matching, BipartiteGraph, BipartiteMatching, VertexCover};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("matching is not maximum: an augmenting path exists from left vertex {0}")]
    NotMaximum(usize),
    #[error("pair ({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is covered by more than one matching edge")]
    SharedVertex(usize),
    #[error("matching leaves vertex {0} uncovered")]
    NotPerfect(usize),
    #[error("invalid edge ({0}, {1}): {2}")]
    InvalidEdge(usize, usize, &'static str),
}

/// Undirected simple graph with non-negative integer edge weights.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, u32)>,
    index: HashMap<(usize, usize), usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl WeightedGraph {
    pub fn new(vertex_count: usize) -> Self {
        WeightedGraph {
            vertex_count,
            edges: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Adds the edge `{u, v}`. Rejects self-loops, parallel edges and
    /// out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: u32) -> Result<(), MatchingError> {
        if u == v {
            return Err(MatchingError::InvalidEdge(u, v, "self-loop"));
        }
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(MatchingError::InvalidEdge(u, v, "vertex out of range"));
        }
        let k = key(u, v);
        if self.index.contains_key(&k) {
            return Err(MatchingError::InvalidEdge(u, v, "parallel edge"));
        }
        self.index.insert(k, self.edges.len());
        self.edges.push((u, v, weight));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u32> {
        self.index.get(&key(u, v)).map(|&k| self.edges[k].2)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.index.contains_key(&key(u, v))
    }
}

/// A set of vertex-disjoint pairs, stored normalized (`u < v`) and sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Normalizes and sorts the pairs. Fails if a vertex repeats or a pair is
    /// a loop.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self, MatchingError> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(u, v)| key(u, v)).collect();
        pairs.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &pairs {
            if u == v {
                return Err(MatchingError::InvalidEdge(u, v, "self-loop"));
            }
            for w in [u, v] {
                if !seen.insert(w) {
                    return Err(MatchingError::SharedVertex(w));
                }
            }
        }
        Ok(Matching { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `mate[v]` for every vertex below `vertex_count`. Pairs with an endpoint
    /// outside that range are ignored.
    pub fn mates(&self, vertex_count: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; vertex_count];
        for &(u, v) in &self.pairs {
            if u < vertex_count && v < vertex_count {
                mate[u] = Some(v);
                mate[v] = Some(u);
            }
        }
        mate
    }

    /// Checks that every pair is an edge of `graph` and every vertex is covered.
    pub fn check_perfect(&self, graph: &WeightedGraph) -> Result<(), MatchingError> {
        for &(u, v) in &self.pairs {
            if !graph.has_edge(u, v) {
                return Err(MatchingError::NotAnEdge(u, v));
            }
        }
        let mate = self.mates(graph.vertex_count());
        match mate.iter().position(Option::is_none) {
            Some(v) => Err(MatchingError::NotPerfect(v)),
            None => Ok(()),
        }
    }

    /// Edge-list dump, one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        self.pairs.iter().map(|(u, v)| format!("{u} {v}\n")).collect()
    }
}

/// Sum of the weights of the matched edges.
pub fn matching_weight(matching: &Matching, graph: &WeightedGraph) -> Result<u64, MatchingError> {
    matching.pairs().iter().try_fold(0u64, |acc, &(u, v)| {
        graph
            .weight(u, v)
            .map(|w| acc + u64::from(w))
            .ok_or(MatchingError::NotAnEdge(u, v))
    })
}

/// A perfect matching of minimum total weight.
///
/// Internally weights are flipped to `W - w` with `W` one above the maximum
/// weight, and a maximum-weight maximum-cardinality matching is computed.
/// Every perfect matching has the same number of edges, so that maximum is a
/// minimum-weight perfect matching whenever one exists.
pub fn min_weight_perfect_matching(graph: &WeightedGraph) -> Result<Matching, MatchingError> {
    let n = graph.vertex_count();
    if n % 2 == 1 {
        return Err(MatchingError::NoPerfectMatching);
    }
    if n == 0 {
        return Ok(Matching::default());
    }
    let top = graph.edges().iter().map(|e| i64::from(e.2)).max().unwrap_or(0) + 1;
    let flipped: Vec<(usize, usize, i64)> = graph
        .edges()
        .iter()
        .map(|&(u, v, w)| (u, v, top - i64::from(w)))
        .collect();
    let mate = blossom::max_weight_matching(n, &flipped, true);
    let mut pairs = Vec::with_capacity(n / 2);
    for (v, m) in mate.iter().enumerate() {
        match *m {
            None => return Err(MatchingError::NoPerfectMatching),
            Some(u) if v < u => pairs.push((v, u)),
            Some(_) => {}
        }
    }
    Matching::from_pairs(pairs)
}

/// Maximum-weight matching on a general graph; unmatched vertices map to
/// `None`. With `max_cardinality` set, only maximum-cardinality matchings are
/// considered.
pub fn max_weight_matching(
    vertex_count: usize,
    edges: &[(usize, usize, i64)],
    max_cardinality: bool,
) -> Vec<Option<usize>> {
    blossom::max_weight_matching(vertex_count, edges, max_cardinality)
}
