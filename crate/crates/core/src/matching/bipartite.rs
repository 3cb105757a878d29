use std::collections::VecDeque;

use super::MatchingError;

/// Bipartite graph with adjacency stored from the left side, sorted by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds the graph, dropping duplicate edges. Panics on out-of-range
    /// endpoints.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(left_count: usize, right_count: usize, edges: I) -> Self {
        let mut adj = vec![Vec::new(); left_count];
        for (l, r) in edges {
            assert!(l < left_count && r < right_count, "edge ({l}, {r}) out of range");
            adj[l].push(r);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        BipartiteGraph {
            left_count,
            right_count,
            adj,
        }
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adj[left]
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        self.adj[left].binary_search(&right).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, r)))
    }
}

/// A matching of a bipartite graph, stored as mate arrays on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub mate_left: Vec<Option<usize>>,
    pub mate_right: Vec<Option<usize>>,
}

impl BipartiteMatching {
    pub fn empty(left_count: usize, right_count: usize) -> Self {
        BipartiteMatching {
            mate_left: vec![None; left_count],
            mate_right: vec![None; right_count],
        }
    }

    /// Builds a matching from `(left, right)` pairs; fails if a vertex repeats.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        left_count: usize,
        right_count: usize,
        pairs: I,
    ) -> Result<Self, MatchingError> {
        let mut m = Self::empty(left_count, right_count);
        for (l, r) in pairs {
            if l >= left_count || r >= right_count {
                return Err(MatchingError::InvalidEdge(l, r, "vertex out of range"));
            }
            if m.mate_left[l].is_some() {
                return Err(MatchingError::SharedVertex(l));
            }
            if m.mate_right[r].is_some() {
                return Err(MatchingError::SharedVertex(r));
            }
            m.mate_left[l] = Some(r);
            m.mate_right[r] = Some(l);
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.mate_left.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(left, right)` pairs in increasing left order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate_left
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
            .collect()
    }

    /// The same matching with sides exchanged.
    pub fn transposed(&self) -> Self {
        BipartiteMatching {
            mate_left: self.mate_right.clone(),
            mate_right: self.mate_left.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexCover {
    pub left_set: Vec<usize>,
    pub right_set: Vec<usize>,
}

impl VertexCover {
    pub fn len(&self) -> usize {
        self.left_set.len() + self.right_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covers(&self, graph: &BipartiteGraph) -> bool {
        let mut left = vec![false; graph.left_count()];
        let mut right = vec![false; graph.right_count()];
        self.left_set.iter().for_each(|&l| left[l] = true);
        self.right_set.iter().for_each(|&r| right[r] = true);
        graph.edges().all(|(l, r)| left[l] || right[r])
    }

    pub fn transposed(&self) -> Self {
        VertexCover {
            left_set: self.right_set.clone(),
            right_set: self.left_set.clone(),
        }
    }
}

/// Hopcroft-Karp maximum-cardinality matching. Vertices and adjacency are
/// visited in index order, so the result is deterministic.
pub fn max_bipartite_matching(graph: &BipartiteGraph) -> BipartiteMatching {
    let nl = graph.left_count();
    let mut m = BipartiteMatching::empty(nl, graph.right_count());
    let mut dist = vec![usize::MAX; nl];
    // next neighbor to try per left vertex in the current phase
    let mut cursor = vec![0usize; nl];

    loop {
        // BFS layers from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..nl {
            if m.mate_left[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in graph.neighbors(l) {
                match m.mate_right[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        cursor.iter_mut().for_each(|c| *c = 0);
        for l in 0..nl {
            if m.mate_left[l].is_none() {
                augment(graph, &mut m, &mut dist, &mut cursor, l);
            }
        }
    }
    m
}

// Layered DFS for one vertex-disjoint augmenting path, iterative so deep
// alternating paths cannot overflow the stack.
fn augment(
    graph: &BipartiteGraph,
    m: &mut BipartiteMatching,
    dist: &mut [usize],
    cursor: &mut [usize],
    root: usize,
) -> bool {
    let mut stack = vec![root];
    while let Some(&l) = stack.last() {
        let adj = graph.neighbors(l);
        let mut advanced = false;
        while cursor[l] < adj.len() {
            let r = adj[cursor[l]];
            cursor[l] += 1;
            match m.mate_right[r] {
                None => {
                    // flip the path root .. l, r
                    let mut r = r;
                    while let Some(l) = stack.pop() {
                        let prev = m.mate_left[l];
                        m.mate_left[l] = Some(r);
                        m.mate_right[r] = Some(l);
                        match prev {
                            Some(p) => r = p,
                            None => break,
                        }
                    }
                    return true;
                }
                Some(l2) if dist[l2] == dist[l] + 1 => {
                    stack.push(l2);
                    advanced = true;
                    break;
                }
                Some(_) => {}
            }
        }
        if !advanced {
            dist[l] = usize::MAX;
            stack.pop();
        }
    }
    false
}

/// Minimum vertex cover from a maximum matching (König's construction):
/// with `Z` the vertices reachable from free left vertices by alternating
/// paths, the cover is `(L \ Z) ∪ (R ∩ Z)`.
///
/// Fails if `matching` uses non-edges or admits an augmenting path.
pub fn koenig_cover(graph: &BipartiteGraph, matching: &BipartiteMatching) -> Result<VertexCover, MatchingError> {
    let nl = graph.left_count();
    let nr = graph.right_count();
    if matching.mate_left.len() != nl || matching.mate_right.len() != nr {
        return Err(MatchingError::InvalidEdge(nl, nr, "matching sized for a different graph"));
    }
    for (l, r) in matching.pairs() {
        if !graph.has_edge(l, r) || matching.mate_right[r] != Some(l) {
            return Err(MatchingError::NotAnEdge(l, r));
        }
    }

    let mut seen_left = vec![false; nl];
    let mut seen_right = vec![false; nr];
    let mut queue = VecDeque::new();
    for l in 0..nl {
        if matching.mate_left[l].is_none() {
            seen_left[l] = true;
            queue.push_back((l, l));
        }
    }
    while let Some((l, root)) = queue.pop_front() {
        for &r in graph.neighbors(l) {
            if seen_right[r] || matching.mate_left[l] == Some(r) {
                continue;
            }
            seen_right[r] = true;
            match matching.mate_right[r] {
                None => return Err(MatchingError::NotMaximum(root)),
                Some(l2) => {
                    if !seen_left[l2] {
                        seen_left[l2] = true;
                        queue.push_back((l2, root));
                    }
                }
            }
        }
    }
    Ok(VertexCover {
        left_set: (0..nl).filter(|&l| !seen_left[l]).collect(),
        right_set: (0..nr).filter(|&r| seen_right[r]).collect(),
    })
}
