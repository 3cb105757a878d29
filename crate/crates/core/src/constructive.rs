//! Certified lower-bound forests for balanced colorings, built without any
//! optimization step.
//!
//! Let `G1` be the majority-color graph with maximum matching `M` and König
//! cover `S`. Matched vertices split into `A' = A ∩ S`, `A'' = A − A'` on the
//! `X` side and `B' = B ∩ S`, `B'' = B − B'` on the `Y` side; `M` pairs `A'`
//! with `B''` and `A''` with `B'`, and no `G1` edge joins `X − A'` to
//! `Y − B'`. Sides are exchanged if needed so that `|A'| ≥ |B'|`.
//!
//! * Case 1 (`|A'| ≤ n/√2`): every `b ∈ B''` is a center with its `M`-partner
//!   as majority leaf and a private vertex of `X − A'` as minority leaf.
//! * Case 2: a maximum matching `M'` of the minority graph is laid over `M`
//!   inside `A' ∪ B''`. The union splits into alternating paths and even
//!   cycles; forks centered in `B''` are cut from each component, odd cycles
//!   (`k` odd) are handled in pairs through one extra edge, and leftover `M`
//!   edges are finished off with minority leaves in `X − A'`. If `|M'|` is
//!   below `n/√2`, Case 1 is applied to the minority graph instead.
//!
//! The guaranteed size is `⌊(1 − 1/√2)n⌋`.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{at_most_n_over_sqrt2, lower_bound_floor, Color, Coloring, ForestJson, Fork, ForkForest, Side, Vertex};
use crate::matching::{koenig_cover, max_bipartite_matching, BipartiteGraph, BipartiteMatching, MatchingError, VertexCover};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("coloring is not balanced ({black} black vs {white} white edges)")]
    Unbalanced { black: usize, white: usize },
    #[error("the lower bound needs n ≥ 2 (got n = {0})")]
    TooSmall(usize),
    #[error("cycle with an odd number ({0}) of minority matching edges needs pairing")]
    OddCycle(usize),
    #[error("expected a cycle with an odd number of minority matching edges")]
    NotOddCycle,
    #[error("invalid decomposition input: {0}")]
    Decomposition(String),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// Graph of the `color` edges, `X` on the left and `Y` on the right.
pub fn color_graph(coloring: &Coloring, color: Color) -> BipartiteGraph {
    let n = coloring.n();
    BipartiteGraph::new(
        n,
        n,
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| coloring.color(x, y) == color),
    )
}

/// Partition of the matched vertices relative to a König cover. All lists
/// are sorted vertex indices; `a*` are on `X`, `b*` on `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDecomposition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub a_prime: Vec<usize>,
    pub b_prime: Vec<usize>,
    pub a_dprime: Vec<usize>,
    pub b_dprime: Vec<usize>,
}

impl CoverDecomposition {
    fn transposed(&self) -> Self {
        CoverDecomposition {
            a: self.b.clone(),
            b: self.a.clone(),
            a_prime: self.b_prime.clone(),
            b_prime: self.a_prime.clone(),
            a_dprime: self.b_dprime.clone(),
            b_dprime: self.a_dprime.clone(),
        }
    }
}

/// `G1`, its maximum matching, König cover and the induced partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Color of the edges forming `G1`.
    pub color: Color,
    pub matching: BipartiteMatching,
    pub cover: VertexCover,
    pub sets: CoverDecomposition,
}

impl Decomposition {
    /// The decomposition seen with `X` and `Y` exchanged.
    pub fn transposed(&self) -> Self {
        Decomposition {
            color: self.color,
            matching: self.matching.transposed(),
            cover: self.cover.transposed(),
            sets: self.sets.transposed(),
        }
    }

    /// Checks the partition invariants against `coloring`; returns the first
    /// failure.
    pub fn check(&self, coloring: &Coloring) -> Result<(), String> {
        let s = &self.sets;
        if s.a_prime.len() != s.b_dprime.len() {
            return Err(format!("|A'| = {} but |B''| = {}", s.a_prime.len(), s.b_dprime.len()));
        }
        if s.a_dprime.len() != s.b_prime.len() {
            return Err(format!("|A''| = {} but |B'| = {}", s.a_dprime.len(), s.b_prime.len()));
        }
        let n = coloring.n();
        let mut in_a_prime = vec![false; n];
        let mut in_b_prime = vec![false; n];
        s.a_prime.iter().for_each(|&x| in_a_prime[x] = true);
        s.b_prime.iter().for_each(|&y| in_b_prime[y] = true);
        for x in (0..n).filter(|&x| !in_a_prime[x]) {
            for y in (0..n).filter(|&y| !in_b_prime[y]) {
                if coloring.color(x, y) == self.color {
                    return Err(format!("G1 edge x{x}y{y} avoids the cover"));
                }
            }
        }
        for &b in &s.b_dprime {
            match self.matching.mate_right[b] {
                Some(a) if in_a_prime[a] => {}
                _ => return Err(format!("y{b} in B'' is not matched into A'")),
            }
        }
        Ok(())
    }
}

/// Maximum matching and canonical König cover of the `color` graph.
pub fn decompose(coloring: &Coloring, color: Color) -> Decomposition {
    let graph = color_graph(coloring, color);
    let matching = max_bipartite_matching(&graph);
    let cover = koenig_cover(&graph, &matching).expect("Hopcroft-Karp output is maximum");
    decompose_from_parts(color, matching, cover)
}

/// Decomposition from a caller-supplied maximum matching and minimum cover of
/// the `color` graph. Both are checked.
pub fn decompose_with(
    coloring: &Coloring,
    color: Color,
    matching: BipartiteMatching,
    cover: VertexCover,
) -> Result<Decomposition, ConstructError> {
    let graph = color_graph(coloring, color);
    for (l, r) in matching.pairs() {
        if !graph.has_edge(l, r) {
            return Err(MatchingError::NotAnEdge(l, r).into());
        }
    }
    if !cover.covers(&graph) {
        return Err(ConstructError::Decomposition("cover misses an edge".into()));
    }
    if cover.len() != matching.len() {
        return Err(ConstructError::Decomposition(format!(
            "cover size {} differs from matching size {}",
            cover.len(),
            matching.len()
        )));
    }
    Ok(decompose_from_parts(color, matching, cover))
}

fn decompose_from_parts(color: Color, matching: BipartiteMatching, cover: VertexCover) -> Decomposition {
    let n_left = matching.mate_left.len();
    let n_right = matching.mate_right.len();
    let mut left_cov = vec![false; n_left];
    let mut right_cov = vec![false; n_right];
    cover.left_set.iter().for_each(|&l| left_cov[l] = true);
    cover.right_set.iter().for_each(|&r| right_cov[r] = true);
    let a: Vec<usize> = (0..n_left).filter(|&x| matching.mate_left[x].is_some()).collect();
    let b: Vec<usize> = (0..n_right).filter(|&y| matching.mate_right[y].is_some()).collect();
    let (a_prime, a_dprime) = a.iter().copied().partition(|&x| left_cov[x]);
    let (b_prime, b_dprime) = b.iter().copied().partition(|&y| right_cov[y]);
    Decomposition {
        color,
        matching,
        cover,
        sets: CoverDecomposition {
            a,
            b,
            a_prime,
            b_prime,
            a_dprime,
            b_dprime,
        },
    }
}

/// Case 1 forest, centered on `Y`: `b ∈ B''` paired with its `M`-partner and
/// with the next unused vertex of `X − A'`.
pub fn extract_case1(coloring: &Coloring, d: &Decomposition) -> ForkForest {
    let outside = outside_a_prime(coloring.n(), &d.sets);
    let forks = d
        .sets
        .b_dprime
        .iter()
        .zip(outside)
        .map(|(&b, x)| {
            let a = d.matching.mate_right[b].expect("B'' is matched");
            Fork::from_leaves(coloring, Vertex::y(b), Vertex::x(a), Vertex::x(x))
                .expect("cover leaves only minority edges between B'' and X - A'")
        })
        .collect();
    ForkForest {
        center_side: Side::Y,
        forks,
    }
}

fn outside_a_prime(n: usize, sets: &CoverDecomposition) -> Vec<usize> {
    let mut in_a_prime = vec![false; n];
    sets.a_prime.iter().for_each(|&x| in_a_prime[x] = true);
    (0..n).filter(|&x| !in_a_prime[x]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Path,
    Cycle,
}

/// A connected component of `(M ∪ M')[A' ∪ B'']`.
///
/// `pairs[i] = (a_i, b_i)` are the `M` edges in walk order; the `M'` edges
/// are `b_i a_{i+1}` (indices taken cyclically for cycles). Paths start at
/// an `A'` vertex and end at a `B''` vertex, both ends on `M` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingComponent {
    pub kind: ComponentKind,
    pub pairs: Vec<(usize, usize)>,
}

impl AlternatingComponent {
    /// Number of `M'` edges.
    pub fn k(&self) -> usize {
        match self.kind {
            ComponentKind::Path => self.pairs.len() - 1,
            ComponentKind::Cycle => self.pairs.len(),
        }
    }

    /// `(a, b)` pairs of the `M` edges.
    pub fn m_edges(&self) -> Vec<(usize, usize)> {
        self.pairs.clone()
    }

    /// `(a, b)` pairs of the `M'` edges.
    pub fn m_prime_edges(&self) -> Vec<(usize, usize)> {
        (0..self.k()).filter_map(|i| self.next_a(i).map(|a| (a, self.pairs[i].1))).collect()
    }

    /// Alternating vertex sequence `a_0, b_0, a_1, b_1, …`.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.pairs.iter().flat_map(|&(a, b)| [Vertex::x(a), Vertex::y(b)]).collect()
    }

    fn next_a(&self, i: usize) -> Option<usize> {
        if i + 1 < self.pairs.len() {
            Some(self.pairs[i + 1].0)
        } else if self.kind == ComponentKind::Cycle {
            Some(self.pairs[0].0)
        } else {
            None
        }
    }

    fn is_odd_cycle(&self) -> bool {
        self.kind == ComponentKind::Cycle && self.k() % 2 == 1
    }
}

/// Splits `(M ∪ M')[A' ∪ B'']` into paths (in order of their `A'` start) and
/// then cycles (in order of their smallest-index `A'` vertex). `m_prime` is a
/// matching of the minority graph in the same orientation as `d`.
pub fn build_alternating_components(d: &Decomposition, m_prime: &BipartiteMatching) -> Vec<AlternatingComponent> {
    let n_left = d.matching.mate_left.len();
    let n_right = d.matching.mate_right.len();
    let mut in_a_prime = vec![false; n_left];
    let mut in_b_dprime = vec![false; n_right];
    d.sets.a_prime.iter().for_each(|&x| in_a_prime[x] = true);
    d.sets.b_dprime.iter().for_each(|&y| in_b_dprime[y] = true);

    // M' restricted to A' × B''
    let mut mp_of_a = vec![None; n_left];
    let mut mp_of_b = vec![None; n_right];
    for (a, b) in m_prime.pairs() {
        if in_a_prime[a] && in_b_dprime[b] {
            mp_of_a[a] = Some(b);
            mp_of_b[b] = Some(a);
        }
    }

    let mut visited = vec![false; n_left];
    let mut components = Vec::new();
    let walk = |start: usize, visited: &mut Vec<bool>| {
        let mut pairs = Vec::new();
        let mut a = start;
        loop {
            visited[a] = true;
            let b = d.matching.mate_left[a].expect("A' is matched");
            pairs.push((a, b));
            match mp_of_b[b] {
                Some(next) if !visited[next] => a = next,
                _ => break,
            }
        }
        pairs
    };
    for &a in &d.sets.a_prime {
        if mp_of_a[a].is_none() {
            let pairs = walk(a, &mut visited);
            components.push(AlternatingComponent {
                kind: ComponentKind::Path,
                pairs,
            });
        }
    }
    for &a in &d.sets.a_prime {
        if !visited[a] {
            let pairs = walk(a, &mut visited);
            components.push(AlternatingComponent {
                kind: ComponentKind::Cycle,
                pairs,
            });
        }
    }
    components
}

// Vertices already spent on forks.
struct Usage {
    x: Vec<bool>,
    y: Vec<bool>,
}

impl Usage {
    fn new(n: usize) -> Self {
        Usage {
            x: vec![false; n],
            y: vec![false; n],
        }
    }

    fn take(&mut self, fork: &Fork) {
        for v in fork.vertices() {
            match v.side {
                Side::X => self.x[v.index] = true,
                Side::Y => self.y[v.index] = true,
            }
        }
    }
}

fn fork_at(coloring: &Coloring, b: usize, a1: usize, a2: usize) -> Fork {
    Fork::from_leaves(coloring, Vertex::y(b), Vertex::x(a1), Vertex::x(a2)).expect("M and M' edges have different colors")
}

// Walks the component once, taking the fork b_i(a_i, a_{i+1}) whenever all
// three vertices are still free. On a path this yields ⌈k/2⌉ forks.
fn take_greedy(c: &AlternatingComponent, coloring: &Coloring, usage: &mut Usage, out: &mut Vec<Fork>) {
    for (i, &(a, b)) in c.pairs.iter().enumerate() {
        let Some(next) = c.next_a(i) else { continue };
        if usage.y[b] || usage.x[a] || usage.x[next] {
            continue;
        }
        let fork = fork_at(coloring, b, a, next);
        usage.take(&fork);
        out.push(fork);
    }
}

// One fork at b_0 of an odd cycle using an outside vertex `ext` of A', then
// the rest of the cycle greedily: (k+1)/2 forks from the cycle's vertices
// plus `ext`. Which cycle leaf joins `ext` depends on the color of b_0 ext.
fn take_with_external(
    c: &AlternatingComponent,
    ext: usize,
    coloring: &Coloring,
    majority: Color,
    usage: &mut Usage,
    out: &mut Vec<Fork>,
) {
    let (a0, b0) = c.pairs[0];
    let a1 = c.next_a(0).expect("cycles have a successor");
    let fork = if coloring.color(ext, b0) == majority {
        // ext replaces the M leaf; the M' leaf a_1 stays
        fork_at(coloring, b0, ext, a1)
    } else {
        fork_at(coloring, b0, a0, ext)
    };
    usage.take(&fork);
    out.push(fork);
    take_greedy(c, coloring, usage, out);
}

/// Forks cut from a path or a cycle with an even number of `M'` edges:
/// `⌈k/2⌉` for paths and `k/2` for cycles.
pub fn component_forks(component: &AlternatingComponent, coloring: &Coloring) -> Result<ForkForest, ConstructError> {
    if component.is_odd_cycle() {
        return Err(ConstructError::OddCycle(component.k()));
    }
    let mut usage = Usage::new(coloring.n());
    let mut forks = Vec::new();
    take_greedy(component, coloring, &mut usage, &mut forks);
    Ok(ForkForest {
        center_side: Side::Y,
        forks,
    })
}

/// `(k1 + k2)/2` forks from two odd cycles joined by the edge `b_0(c1) a_0(c2)`.
pub fn pair_odd_cycles(
    c1: &AlternatingComponent,
    c2: &AlternatingComponent,
    coloring: &Coloring,
    majority: Color,
) -> Result<ForkForest, ConstructError> {
    if !c1.is_odd_cycle() || !c2.is_odd_cycle() {
        return Err(ConstructError::NotOddCycle);
    }
    let mut usage = Usage::new(coloring.n());
    let mut forks = Vec::new();
    pair_into(c1, c2, coloring, majority, &mut usage, &mut forks);
    Ok(ForkForest {
        center_side: Side::Y,
        forks,
    })
}

fn pair_into(
    c1: &AlternatingComponent,
    c2: &AlternatingComponent,
    coloring: &Coloring,
    majority: Color,
    usage: &mut Usage,
    out: &mut Vec<Fork>,
) {
    let before = out.len();
    take_with_external(c1, c2.pairs[0].0, coloring, majority, usage, out);
    take_greedy(c2, coloring, usage, out);
    debug_assert_eq!(out.len() - before, (c1.k() + c2.k()) / 2);
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeftoverOutcome {
    Forks(ForkForest),
    /// No free `A'` vertex outside the cycle; every `A'` vertex is already
    /// in a fork.
    Fallback,
}

/// `(k+1)/2` forks from the last unpaired odd cycle using the smallest free
/// vertex of `unused_a_prime` (which must lie outside the cycle).
pub fn leftover_cycle_forks(
    c: &AlternatingComponent,
    unused_a_prime: &[usize],
    coloring: &Coloring,
    majority: Color,
) -> Result<LeftoverOutcome, ConstructError> {
    if !c.is_odd_cycle() {
        return Err(ConstructError::NotOddCycle);
    }
    let on_cycle: Vec<usize> = c.pairs.iter().map(|p| p.0).collect();
    let Some(&ext) = unused_a_prime.iter().filter(|a| !on_cycle.contains(a)).min() else {
        return Ok(LeftoverOutcome::Fallback);
    };
    let mut usage = Usage::new(coloring.n());
    let mut forks = Vec::new();
    take_with_external(c, ext, coloring, majority, &mut usage, &mut forks);
    Ok(LeftoverOutcome::Forks(ForkForest {
        center_side: Side::Y,
        forks,
    }))
}

/// Bookkeeping from a Case 2 run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case2Outcome {
    pub forest: ForkForest,
    /// `|M'| − |Y − B''| − |X − A'|`, possibly negative.
    pub x: i64,
    /// `M'` edges inside `A' ∪ B''`.
    pub x_hat: usize,
    pub component_forks: usize,
    pub supplemental_forks: usize,
    /// The single unpaired odd cycle found no free `A'` vertex.
    pub fallback: bool,
}

/// Case 2 forest, centered on `Y`.
pub fn extract_case2(coloring: &Coloring, d: &Decomposition, m_prime: &BipartiteMatching) -> Case2Outcome {
    let n = coloring.n();
    let majority = d.color;
    let components = build_alternating_components(d, m_prime);
    let x_hat: usize = components.iter().map(AlternatingComponent::k).sum();
    let x = m_prime.len() as i64 - (n - d.sets.b_dprime.len()) as i64 - (n - d.sets.a_prime.len()) as i64;

    let mut usage = Usage::new(n);
    let mut forks = Vec::new();
    let mut odd = Vec::new();
    for c in &components {
        if c.is_odd_cycle() {
            odd.push(c);
        } else {
            take_greedy(c, coloring, &mut usage, &mut forks);
        }
    }
    let mut chunks = odd.chunks_exact(2);
    for pair in &mut chunks {
        pair_into(pair[0], pair[1], coloring, majority, &mut usage, &mut forks);
    }
    let mut fallback = false;
    if let [last] = chunks.remainder() {
        let on_cycle: Vec<usize> = last.pairs.iter().map(|p| p.0).collect();
        let ext = d.sets.a_prime.iter().copied().find(|a| !usage.x[*a] && !on_cycle.contains(a));
        match ext {
            Some(ext) => take_with_external(last, ext, coloring, majority, &mut usage, &mut forks),
            None => {
                fallback = true;
                take_greedy(last, coloring, &mut usage, &mut forks);
            }
        }
    }
    let component_forks = forks.len();

    // Untouched M edges between A' and B'' take a minority leaf in X - A'.
    let outside = outside_a_prime(n, &d.sets);
    let free_m_edges = d.sets.b_dprime.iter().filter_map(|&b| {
        let a = d.matching.mate_right[b].expect("B'' is matched");
        (!usage.y[b] && !usage.x[a]).then_some((a, b))
    });
    for ((a, b), xo) in free_m_edges.zip(outside) {
        forks.push(fork_at(coloring, b, a, xo));
    }
    let supplemental_forks = forks.len() - component_forks;

    Case2Outcome {
        forest: ForkForest {
            center_side: Side::Y,
            forks,
        },
        x,
        x_hat,
        component_forks,
        supplemental_forks,
        fallback,
    }
}

/// Result of [`constructive_lower_bound`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructiveReport {
    /// 1 or 2.
    pub case: u8,
    /// Color whose graph played the role of `G1` in the case that fired.
    pub g1_color: Color,
    /// Whether `X` and `Y` were exchanged to get `|A'| ≥ |B'|`.
    pub transposed: bool,
    pub bound_floor: usize,
    /// Forest in the orientation of the input coloring.
    pub forest: ForkForest,
}

impl ConstructiveReport {
    pub fn certified_size(&self) -> usize {
        self.forest.size()
    }

    pub fn to_json(&self) -> ConstructiveJson {
        ConstructiveJson {
            case: self.case,
            certified_size: self.certified_size(),
            bound_floor: self.bound_floor,
            forest: self.forest.to_json(),
        }
    }
}

/// Serialized report; field order is the output key order.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructiveJson {
    pub case: u8,
    pub certified_size: usize,
    pub bound_floor: usize,
    pub forest: ForestJson,
}

// Decomposition of the `color` graph, oriented so that |A'| ≥ |B'|.
fn oriented(coloring: &Coloring, color: Color) -> (Coloring, Decomposition, bool) {
    let d = decompose(coloring, color);
    if d.sets.a_prime.len() >= d.sets.b_prime.len() {
        (coloring.clone(), d, false)
    } else {
        (coloring.transpose(), d.transposed(), true)
    }
}

fn case1_report(coloring: &Coloring, color: Color) -> (ForkForest, bool) {
    let (work, d, transposed) = oriented(coloring, color);
    let forest = extract_case1(&work, &d);
    (if transposed { forest.transposed() } else { forest }, transposed)
}

/// A fork forest of size at least `⌊(1 − 1/√2)n⌋` for a balanced coloring.
pub fn constructive_lower_bound(coloring: &Coloring) -> Result<ConstructiveReport, ConstructError> {
    let n = coloring.n();
    if n < 2 {
        return Err(ConstructError::TooSmall(n));
    }
    if !coloring.is_balanced() {
        let (black, white) = coloring.count_colors();
        return Err(ConstructError::Unbalanced { black, white });
    }
    let bound_floor = lower_bound_floor(n as u64) as usize;
    let majority = coloring.majority_color();
    let minority = majority.other();

    let (work, d, transposed) = oriented(coloring, majority);
    if at_most_n_over_sqrt2(d.sets.a_prime.len(), n) {
        let forest = extract_case1(&work, &d);
        return Ok(ConstructiveReport {
            case: 1,
            g1_color: majority,
            transposed,
            bound_floor,
            forest: if transposed { forest.transposed() } else { forest },
        });
    }

    let m_prime = max_bipartite_matching(&color_graph(&work, minority));
    if !at_most_n_over_sqrt2(m_prime.len(), n) {
        let outcome = extract_case2(&work, &d, &m_prime);
        return Ok(ConstructiveReport {
            case: 2,
            g1_color: majority,
            transposed,
            bound_floor,
            forest: if transposed { outcome.forest.transposed() } else { outcome.forest },
        });
    }

    // |M'| < n/√2: the minority graph has a small cover, so Case 1 applies to it.
    let (forest, transposed) = case1_report(coloring, minority);
    Ok(ConstructiveReport {
        case: 1,
        g1_color: minority,
        transposed,
        bound_floor,
        forest,
    })
}
