//! Exhaustive reference solver for small instances.

use thiserror::Error;

use crate::coloring::{Color, Coloring, Fork, ForkForest, Side, Vertex};

/// Largest side size accepted by the backtracking search.
pub const MAX_ORACLE_N: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for the exhaustive oracle (n = {0}, limit {MAX_ORACLE_N})")]
    TooLarge(usize),
}

struct Search<'a> {
    coloring: &'a Coloring,
    n: usize,
    used_leaf: Vec<bool>,
    current: Vec<(usize, usize, usize)>,
    best: Vec<(usize, usize, usize)>,
}

impl Search<'_> {
    // Centers are tried in increasing index; for each center, "no fork" is
    // tried after every (black, white) leaf pair in lexicographic order.
    fn go(&mut self, center: usize) {
        if self.current.len() + (self.n - center) <= self.best.len() {
            return;
        }
        let free = self.used_leaf.iter().filter(|u| !**u).count();
        if self.current.len() + free / 2 <= self.best.len() {
            return;
        }
        if center == self.n {
            self.best = self.current.clone();
            return;
        }
        for lb in 0..self.n {
            if self.used_leaf[lb] || self.coloring.color(center, lb) != Color::Black {
                continue;
            }
            for lw in 0..self.n {
                if self.used_leaf[lw] || self.coloring.color(center, lw) != Color::White {
                    continue;
                }
                self.used_leaf[lb] = true;
                self.used_leaf[lw] = true;
                self.current.push((center, lb, lw));
                self.go(center + 1);
                self.current.pop();
                self.used_leaf[lb] = false;
                self.used_leaf[lw] = false;
            }
        }
        self.go(center + 1);
    }
}

fn forest_x(forks: &[(usize, usize, usize)]) -> ForkForest {
    ForkForest {
        center_side: Side::X,
        forks: forks
            .iter()
            .map(|&(c, b, w)| Fork {
                center: Vertex::x(c),
                leaf_black: Vertex::y(b),
                leaf_white: Vertex::y(w),
            })
            .collect(),
    }
}

/// Maximum fork forest centered on `side` by pruned backtracking.
pub fn brute_force_max_forest(coloring: &Coloring, side: Side) -> Result<(usize, ForkForest), OracleError> {
    let n = coloring.n();
    if n > MAX_ORACLE_N {
        return Err(OracleError::TooLarge(n));
    }
    let oriented;
    let col = match side {
        Side::X => coloring,
        Side::Y => {
            oriented = coloring.transpose();
            &oriented
        }
    };
    let mut search = Search {
        coloring: col,
        n,
        used_leaf: vec![false; n],
        current: Vec::new(),
        best: Vec::new(),
    };
    search.go(0);
    let forest = forest_x(&search.best);
    let forest = match side {
        Side::X => forest,
        Side::Y => forest.transposed(),
    };
    Ok((forest.size(), forest))
}

/// `f(G, c)` by exhaustive search on both sides.
pub fn brute_force_f(coloring: &Coloring) -> Result<usize, OracleError> {
    let (x, _) = brute_force_max_forest(coloring, Side::X)?;
    let (y, _) = brute_force_max_forest(coloring, Side::Y)?;
    Ok(x.max(y))
}

/// Every coloring of `K_{n,n}`, in binary counting order over row-major
/// cells (bit set = black). Only sensible for `n ≤ 4`.
pub fn all_colorings(n: usize) -> impl Iterator<Item = Coloring> {
    assert!((1..=4).contains(&n), "enumeration limited to n ≤ 4");
    let cells = n * n;
    (0u64..1 << cells).map(move |mask| {
        let colors = (0..cells)
            .map(|i| if mask >> i & 1 == 1 { Color::Black } else { Color::White })
            .collect();
        Coloring::from_cells(n, colors).expect("n² cells")
    })
}

/// Every balanced coloring of `K_{n,n}`.
pub fn all_balanced_colorings(n: usize) -> impl Iterator<Item = Coloring> {
    all_colorings(n).filter(Coloring::is_balanced)
}
