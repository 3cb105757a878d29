//! Instance families.
//!
//! Randomness comes from `rand_chacha::ChaCha8Rng::seed_from_u64(seed)`, so a
//! given `(n, seed)` produces the same instance on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{Color, Coloring};

/// Side of the black biclique used by [`extremal_coloring`]: `round(n/√2)`.
pub fn extremal_biclique_side(n: usize) -> usize {
    // round(n/√2) = floor(n/√2 + 1/2); n/√2 is never a half-integer, so this
    // is the m closest to n/√2, decided exactly by comparing (2m+1)² with 2n².
    let fl = ((n as u128 * n as u128) / 2).isqrt();
    let lhs = (2 * fl + 1) * (2 * fl + 1);
    let rhs = 2 * (n as u128) * (n as u128);
    if lhs < rhs {
        (fl + 1) as usize
    } else {
        fl as usize
    }
}

/// Black `K_{a,a}` on rows and columns `0..a` with `a = round(n/√2)`, then
/// repaired to balance.
///
/// Too many black edges: flip black→white along row `a−1` from its last
/// column backwards (then row `a−2`, ...). Too few: flip white→black in
/// row-major order starting at row `a`.
pub fn extremal_coloring(n: usize) -> Coloring {
    assert!(n >= 2, "extremal construction needs n ≥ 2");
    let a = extremal_biclique_side(n);
    let mut col = Coloring::uniform(n, Color::White);
    for x in 0..a {
        for y in 0..a {
            col.set(x, y, Color::Black);
        }
    }
    let lo = n * n / 2;
    let hi = (n * n).div_ceil(2);
    let black = a * a;
    if black > hi {
        let cells = (0..a).rev().flat_map(|x| (0..a).rev().map(move |y| (x, y)));
        for (x, y) in cells.take(black - hi) {
            col.set(x, y, Color::White);
        }
    } else if black < lo {
        let cells = (a..n).flat_map(|x| (0..n).map(move |y| (x, y)));
        for (x, y) in cells.take(lo - black) {
            col.set(x, y, Color::Black);
        }
    }
    debug_assert!(col.is_balanced());
    col
}

/// Exactly `⌊n²/2⌋` black edges at positions drawn uniformly by a seeded
/// shuffle of the row-major cells.
pub fn random_balanced(n: usize, seed: u64) -> Coloring {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n * n).collect();
    order.shuffle(&mut rng);
    let mut cells = vec![Color::White; n * n];
    for &i in &order[..n * n / 2] {
        cells[i] = Color::Black;
    }
    Coloring::from_cells(n, cells).expect("n² cells")
}

/// Each edge black independently with probability `p`, drawn in row-major
/// order.
pub fn random_coloring(n: usize, p: f64, seed: u64) -> Coloring {
    assert!(n >= 1);
    assert!((0.0..=1.0).contains(&p), "probability out of range: {p}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = (0..n * n)
        .map(|_| if rng.gen_bool(p) { Color::Black } else { Color::White })
        .collect();
    Coloring::from_cells(n, cells).expect("n² cells")
}
