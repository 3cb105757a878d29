//! Two-colorings of `K_{n,n}`, forks, fork forests and their validation.
//!
//! Rows of the color matrix index the `X` side, columns index the `Y` side.
//! All vertex indices are 0-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Black => 'b',
            Color::White => 'w',
        }
    }
}

/// One of the two partite sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::X => f.write_str("X"),
            Side::Y => f.write_str("Y"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub fn x(index: usize) -> Self {
        Vertex { side: Side::X, index }
    }

    pub fn y(index: usize) -> Self {
        Vertex { side: Side::Y, index }
    }

    /// The same vertex after exchanging the roles of `X` and `Y`.
    pub fn transposed(self) -> Self {
        Vertex {
            side: self.side.opposite(),
            index: self.index,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::X => write!(f, "x{}", self.index),
            Side::Y => write!(f, "y{}", self.index),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty instance")]
    Empty,
    #[error("line 1: invalid side size {0:?}")]
    BadSize(String),
    #[error("side size must be at least 1")]
    ZeroSize,
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: expected {expected} characters, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: invalid character {ch:?} (expected 'b' or 'w')")]
    BadChar { line: usize, column: usize, ch: char },
}

/// A total two-coloring of the edges of `K_{n,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    cells: Vec<Color>,
}

impl Coloring {
    /// A coloring with every edge set to `color`.
    ///
    /// Panics if `n == 0`.
    pub fn uniform(n: usize, color: Color) -> Self {
        assert!(n >= 1, "side size must be at least 1");
        Coloring {
            n,
            cells: vec![color; n * n],
        }
    }

    /// Builds a coloring from row-major cells. Returns `None` when `n == 0`
    /// or the cell count is not `n²`.
    pub fn from_cells(n: usize, cells: Vec<Color>) -> Option<Self> {
        if n == 0 || cells.len() != n * n {
            return None;
        }
        Some(Coloring { n, cells })
    }

    /// Builds a coloring from rows of `'b'`/`'w'` characters, e.g.
    /// `Coloring::from_rows(&["bw", "wb"])`.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, ParseError> {
        let n = rows.len();
        if n == 0 {
            return Err(ParseError::ZeroSize);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            parse_row(row.as_ref(), i + 1, n, &mut cells)?;
        }
        Ok(Coloring { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Color of the edge `x_i y_j`.
    pub fn color(&self, x: usize, y: usize) -> Color {
        self.cells[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize, color: Color) {
        self.cells[x * self.n + y] = color;
    }

    /// Color of the edge between two vertices on opposite sides.
    pub fn edge_color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        match (u.side, v.side) {
            (Side::X, Side::Y) if u.index < self.n && v.index < self.n => {
                Some(self.color(u.index, v.index))
            }
            (Side::Y, Side::X) if u.index < self.n && v.index < self.n => {
                Some(self.color(v.index, u.index))
            }
            _ => None,
        }
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    /// Exchanges the roles of `X` and `Y`.
    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut cells = Vec::with_capacity(n * n);
        for y in 0..n {
            for x in 0..n {
                cells.push(self.color(x, y));
            }
        }
        Coloring { n, cells }
    }

    /// Exchanges black and white on every edge.
    pub fn swap_colors(&self) -> Self {
        Coloring {
            n: self.n,
            cells: self.cells.iter().map(|c| c.other()).collect(),
        }
    }

    /// Returns `(black_count, white_count)`.
    pub fn count_colors(&self) -> (usize, usize) {
        let black = self.cells.iter().filter(|&&c| c == Color::Black).count();
        (black, self.cells.len() - black)
    }

    pub fn is_balanced(&self) -> bool {
        let (b, w) = self.count_colors();
        b.abs_diff(w) <= 1
    }

    /// The color with at least half of the edges; black on a tie.
    pub fn majority_color(&self) -> Color {
        let (b, w) = self.count_colors();
        if b >= w {
            Color::Black
        } else {
            Color::White
        }
    }

    /// Instance text: `n` on the first line, then `n` rows of `b`/`w`.
    pub fn to_instance_string(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1) + 8);
        out.push_str(&self.n.to_string());
        out.push('\n');
        for row in self.cells.chunks(self.n) {
            out.extend(row.iter().map(|c| c.as_char()));
            out.push('\n');
        }
        out
    }
}

fn parse_row(row: &str, line: usize, n: usize, cells: &mut Vec<Color>) -> Result<(), ParseError> {
    let found = row.chars().count();
    for (column, ch) in row.chars().enumerate() {
        match ch {
            'b' => cells.push(Color::Black),
            'w' => cells.push(Color::White),
            _ => return Err(ParseError::BadChar { line, column, ch }),
        }
    }
    if found != n {
        return Err(ParseError::RowLength {
            line,
            expected: n,
            found,
        });
    }
    Ok(())
}

impl FromStr for Coloring {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // A single trailing newline is allowed; nothing else may follow the matrix.
        let body = s.strip_suffix('\n').unwrap_or(s);
        if body.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or_default();
        if header.is_empty() || !header.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::BadSize(header.to_string()));
        }
        let n: usize = header
            .parse()
            .map_err(|_| ParseError::BadSize(header.to_string()))?;
        if n == 0 {
            return Err(ParseError::ZeroSize);
        }
        let rows: Vec<&str> = lines.collect();
        if rows.len() != n {
            return Err(ParseError::RowCount {
                expected: n,
                found: rows.len(),
            });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            parse_row(row, i + 2, n, &mut cells)?;
        }
        Ok(Coloring { n, cells })
    }
}

/// `⌊n/√2⌋`, computed exactly as the largest `m` with `2m² ≤ n²`.
fn floor_n_over_sqrt2(n: u64) -> u64 {
    let half_sq = (n as u128 * n as u128) / 2;
    half_sq.isqrt() as u64
}

/// `⌈(1 − 1/√2)·n⌉`, exact for every `u64` input.
pub fn lower_bound_ceil(n: u64) -> u64 {
    n - floor_n_over_sqrt2(n)
}

/// `⌊(1 − 1/√2)·n⌋`, exact for every `u64` input.
pub fn lower_bound_floor(n: u64) -> u64 {
    // n/√2 is irrational for n ≥ 1, so floor and ceil differ by exactly one.
    if n == 0 {
        0
    } else {
        lower_bound_ceil(n) - 1
    }
}

/// `true` iff `k ≤ n/√2`, i.e. `2k² ≤ n²`.
pub fn at_most_n_over_sqrt2(k: usize, n: usize) -> bool {
    2 * (k as u128) * (k as u128) <= (n as u128) * (n as u128)
}

/// A center plus two leaves on the opposite side, joined to the center by a
/// black and a white edge respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fork {
    pub center: Vertex,
    pub leaf_black: Vertex,
    pub leaf_white: Vertex,
}

impl Fork {
    pub fn vertices(&self) -> [Vertex; 3] {
        [self.center, self.leaf_black, self.leaf_white]
    }

    pub fn transposed(self) -> Self {
        Fork {
            center: self.center.transposed(),
            leaf_black: self.leaf_black.transposed(),
            leaf_white: self.leaf_white.transposed(),
        }
    }

    /// Builds a fork from a center and two leaves in either order, picking
    /// which leaf is black from `coloring`. Returns `None` if the two edges
    /// have the same color or the vertices are not a valid fork shape.
    pub fn from_leaves(coloring: &Coloring, center: Vertex, l1: Vertex, l2: Vertex) -> Option<Self> {
        if l1 == l2 {
            return None;
        }
        let c1 = coloring.edge_color(center, l1)?;
        let c2 = coloring.edge_color(center, l2)?;
        match (c1, c2) {
            (Color::Black, Color::White) => Some(Fork {
                center,
                leaf_black: l1,
                leaf_white: l2,
            }),
            (Color::White, Color::Black) => Some(Fork {
                center,
                leaf_black: l2,
                leaf_white: l1,
            }),
            _ => None,
        }
    }
}

/// Vertex-disjoint forks, all centered on `center_side`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForkForest {
    pub center_side: Side,
    pub forks: Vec<Fork>,
}

impl ForkForest {
    pub fn empty(center_side: Side) -> Self {
        ForkForest {
            center_side,
            forks: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.forks.len()
    }

    pub fn transposed(&self) -> Self {
        ForkForest {
            center_side: self.center_side.opposite(),
            forks: self.forks.iter().map(|f| f.transposed()).collect(),
        }
    }

    pub fn to_json(&self) -> ForestJson {
        ForestJson {
            side: self.center_side,
            size: self.size(),
            forks: self
                .forks
                .iter()
                .map(|f| ForkJson {
                    center: f.center.index,
                    leaf_black: f.leaf_black.index,
                    leaf_white: f.leaf_white.index,
                })
                .collect(),
        }
    }
}

/// Serialized form of a single fork; leaves are indices on the side opposite
/// the forest's center side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkJson {
    pub center: usize,
    pub leaf_black: usize,
    pub leaf_white: usize,
}

/// Serialized form of a forest. Field order is the output key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestJson {
    pub side: Side,
    pub size: usize,
    pub forks: Vec<ForkJson>,
}

impl ForestJson {
    pub fn to_forest(&self) -> ForkForest {
        let leaf_side = self.side.opposite();
        let at = |side, index| Vertex { side, index };
        ForkForest {
            center_side: self.side,
            forks: self
                .forks
                .iter()
                .map(|f| Fork {
                    center: at(self.side, f.center),
                    leaf_black: at(leaf_side, f.leaf_black),
                    leaf_white: at(leaf_side, f.leaf_white),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    IndexOutOfRange,
    CenterSide,
    LeafSide,
    IdenticalLeaves,
    ColorMismatch,
    NotVertexDisjoint,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::IndexOutOfRange => "index out of range",
            Rule::CenterSide => "center not on forest side",
            Rule::LeafSide => "leaf not opposite the center",
            Rule::IdenticalLeaves => "identical leaves",
            Rule::ColorMismatch => "color mismatch",
            Rule::NotVertexDisjoint => "not vertex-disjoint",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    /// Position of the offending fork in the forest.
    pub fork: usize,
    pub rule: Rule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fork {}: {}", self.fork, self.rule)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// Checks every fork and forest invariant against `coloring`.
pub fn validate_forest(coloring: &Coloring, forest: &ForkForest) -> ValidationReport {
    let n = coloring.n();
    let mut violations = Vec::new();
    // owner[side][index] = first fork touching that vertex
    let mut owner = [vec![None; n], vec![None; n]];
    let slot = |v: Vertex| match v.side {
        Side::X => 0,
        Side::Y => 1,
    };

    for (i, fork) in forest.forks.iter().enumerate() {
        let mut push = |rule| violations.push(Violation { fork: i, rule });
        let verts = fork.vertices();
        if verts.iter().any(|v| v.index >= n) {
            push(Rule::IndexOutOfRange);
            continue;
        }
        if fork.center.side != forest.center_side {
            push(Rule::CenterSide);
        }
        let leaf_side = fork.center.side.opposite();
        if fork.leaf_black.side != leaf_side || fork.leaf_white.side != leaf_side {
            push(Rule::LeafSide);
        } else if fork.leaf_black == fork.leaf_white {
            push(Rule::IdenticalLeaves);
        } else if coloring.edge_color(fork.center, fork.leaf_black) != Some(Color::Black)
            || coloring.edge_color(fork.center, fork.leaf_white) != Some(Color::White)
        {
            push(Rule::ColorMismatch);
        }
        let mut clash = false;
        for v in verts {
            let cell = &mut owner[slot(v)][v.index];
            match *cell {
                Some(j) if j != i => clash = true,
                _ => *cell = Some(i),
            }
        }
        if clash {
            push(Rule::NotVertexDisjoint);
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(rows: &[&str]) -> Coloring {
        Coloring::from_rows(rows).unwrap()
    }

    #[test]
    fn count_colors_examples() {
        assert_eq!(c(&["bb", "ww"]).count_colors(), (2, 2));
        assert_eq!(c(&["b"]).count_colors(), (1, 0));
        assert_eq!(Coloring::uniform(3, Color::White).count_colors(), (0, 9));
    }

    #[test]
    fn balance_examples() {
        assert!(c(&["bb", "ww"]).is_balanced());
        assert!(!c(&["bb", "bw"]).is_balanced());
        assert!(c(&["b"]).is_balanced());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound_ceil(2), 1);
        assert_eq!(lower_bound_ceil(10), 3);
        assert_eq!(lower_bound_ceil(1000), 293);
        assert_eq!(lower_bound_floor(2), 0);
        assert_eq!(lower_bound_floor(10), 2);
        assert_eq!(lower_bound_floor(12), 3);
        assert_eq!(lower_bound_ceil(1), 1);
        assert_eq!(lower_bound_floor(1), 0);
    }

    #[test]
    fn lower_bound_large_n_against_float() {
        // f64 has enough precision here that the float value is far from any integer.
        for n in [1u64 << 20, (1 << 30) + 7, (1 << 40) - 3, 1 << 40] {
            let exact = (1.0 - std::f64::consts::FRAC_1_SQRT_2) * n as f64;
            assert_eq!(lower_bound_ceil(n), exact.ceil() as u64, "n={n}");
        }
    }

    #[test]
    fn validate_ok_fork() {
        let col = c(&["bw", "wb"]);
        let forest = ForkForest {
            center_side: Side::X,
            forks: vec![Fork {
                center: Vertex::x(0),
                leaf_black: Vertex::y(0),
                leaf_white: Vertex::y(1),
            }],
        };
        assert!(validate_forest(&col, &forest).is_ok());
    }

    #[test]
    fn validate_color_mismatch() {
        let col = c(&["bw", "wb"]);
        let forest = ForkForest {
            center_side: Side::X,
            forks: vec![Fork {
                center: Vertex::x(0),
                leaf_black: Vertex::y(1),
                leaf_white: Vertex::y(0),
            }],
        };
        let report = validate_forest(&col, &forest);
        assert!(report.has(Rule::ColorMismatch));
        assert_eq!(report.violations[0].to_string(), "fork 0: color mismatch");
    }

    #[test]
    fn validate_shared_leaf() {
        let col = c(&["bw", "bw"]);
        let forest = ForkForest {
            center_side: Side::X,
            forks: vec![
                Fork {
                    center: Vertex::x(0),
                    leaf_black: Vertex::y(0),
                    leaf_white: Vertex::y(1),
                },
                Fork {
                    center: Vertex::x(1),
                    leaf_black: Vertex::y(0),
                    leaf_white: Vertex::y(1),
                },
            ],
        };
        let report = validate_forest(&col, &forest);
        assert_eq!(
            report.violations,
            vec![Violation {
                fork: 1,
                rule: Rule::NotVertexDisjoint
            }]
        );
        assert_eq!(Rule::NotVertexDisjoint.to_string(), "not vertex-disjoint");
    }

    #[test]
    fn validate_out_of_range_and_side() {
        let col = c(&["bw", "wb"]);
        let forest = ForkForest {
            center_side: Side::Y,
            forks: vec![
                Fork {
                    center: Vertex::x(5),
                    leaf_black: Vertex::y(0),
                    leaf_white: Vertex::y(1),
                },
                Fork {
                    center: Vertex::x(0),
                    leaf_black: Vertex::y(0),
                    leaf_white: Vertex::x(1),
                },
            ],
        };
        let report = validate_forest(&col, &forest);
        assert!(report.has(Rule::IndexOutOfRange));
        assert!(report.has(Rule::CenterSide));
        assert!(report.has(Rule::LeafSide));
    }

    #[test]
    fn parse_instance_text() {
        let col: Coloring = "2\nbw\nwb\n".parse().unwrap();
        assert_eq!(col, c(&["bw", "wb"]));
        let col: Coloring = "2\nbw\nwb".parse().unwrap();
        assert_eq!(col.to_instance_string(), "2\nbw\nwb\n");
        assert!(matches!("2\nbw\nw\n".parse::<Coloring>(), Err(ParseError::RowLength { .. })));
        assert!(matches!("2\nbx\nww\n".parse::<Coloring>(), Err(ParseError::BadChar { .. })));
        assert!(matches!("2\nbw\n".parse::<Coloring>(), Err(ParseError::RowCount { .. })));
        assert!(matches!("2\nbw\nww\n\n".parse::<Coloring>(), Err(ParseError::RowCount { .. })));
        assert!(matches!("0\n".parse::<Coloring>(), Err(ParseError::ZeroSize)));
        assert!(matches!("".parse::<Coloring>(), Err(ParseError::Empty)));
        assert!(matches!(" 2\nbw\nwb\n".parse::<Coloring>(), Err(ParseError::BadSize(_))));
        assert!("2\r\nbw\r\nwb\r\n".parse::<Coloring>().is_err());
    }

    #[test]
    fn fork_from_leaves_orders_by_color() {
        let col = c(&["bw", "wb"]);
        let f = Fork::from_leaves(&col, Vertex::x(0), Vertex::y(1), Vertex::y(0)).unwrap();
        assert_eq!(f.leaf_black, Vertex::y(0));
        assert_eq!(f.leaf_white, Vertex::y(1));
        assert!(Fork::from_leaves(&col, Vertex::x(0), Vertex::y(0), Vertex::y(0)).is_none());
        let mono = c(&["bb", "bb"]);
        assert!(Fork::from_leaves(&mono, Vertex::x(0), Vertex::y(0), Vertex::y(1)).is_none());
    }
}
