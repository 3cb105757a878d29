mod common;

use fork_forest::coloring::{at_most_n_over_sqrt2, ForestJson};
use fork_forest::matching::{koenig_cover, max_bipartite_matching, BipartiteGraph};
use fork_forest::oracle::brute_force_max_forest;
use fork_forest::{
    constructive_lower_bound, lower_bound_ceil, lower_bound_floor, solve_both, solve_exact, validate_forest, Color,
    Coloring, ForkForest, Side,
};
use proptest::prelude::*;

fn coloring(max_n: usize) -> impl Strategy<Value = Coloring> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let cells = bits.into_iter().map(|b| if b { Color::Black } else { Color::White }).collect();
            Coloring::from_cells(n, cells).unwrap()
        })
    })
}

fn balanced(min_n: usize, max_n: usize) -> impl Strategy<Value = Coloring> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, seed)| fork_forest::generators::random_balanced(n, seed))
}

proptest! {
    #[test]
    fn bounds_are_exact_and_monotone(n in 1u64..5_000_000) {
        let ceil = lower_bound_ceil(n);
        let floor = lower_bound_floor(n);
        prop_assert_eq!(ceil, floor + 1);
        prop_assert!(lower_bound_ceil(n + 1) >= ceil);
        prop_assert!(lower_bound_floor(n + 1) >= floor);
        let real = (1.0 - std::f64::consts::FRAC_1_SQRT_2) * n as f64;
        prop_assert!((floor as f64) < real + 1e-9 && real < ceil as f64 + 1e-9);
    }

    #[test]
    fn sqrt_test_matches_squares(k in 0usize..10_000, n in 1usize..10_000) {
        prop_assert_eq!(at_most_n_over_sqrt2(k, n), 2 * (k as u128).pow(2) <= (n as u128).pow(2));
    }

    #[test]
    fn balance_survives_swap_and_transpose(col in coloring(9)) {
        prop_assert_eq!(col.is_balanced(), col.swap_colors().is_balanced());
        prop_assert_eq!(col.is_balanced(), col.transpose().is_balanced());
        prop_assert_eq!(col.transpose().transpose(), col.clone());
        let (b, w) = col.count_colors();
        prop_assert_eq!(col.swap_colors().count_colors(), (w, b));
    }

    #[test]
    fn instance_text_round_trips(col in coloring(12)) {
        let parsed: Coloring = col.to_instance_string().parse().unwrap();
        prop_assert_eq!(parsed, col);
    }

    #[test]
    fn empty_forest_is_valid(col in coloring(8)) {
        prop_assert!(validate_forest(&col, &ForkForest::empty(Side::X)).is_ok());
        prop_assert!(validate_forest(&col, &ForkForest::empty(Side::Y)).is_ok());
    }

    #[test]
    fn exact_matches_oracle(col in coloring(5)) {
        for side in [Side::X, Side::Y] {
            let forest = solve_exact(&col, side);
            prop_assert!(validate_forest(&col, &forest).is_ok());
            prop_assert_eq!(forest.size(), brute_force_max_forest(&col, side).unwrap().0);
        }
    }

    #[test]
    fn f_is_symmetric(col in coloring(10)) {
        let f = solve_both(&col).f_value;
        prop_assert_eq!(solve_both(&col.transpose()).f_value, f);
        prop_assert_eq!(solve_both(&col.swap_colors()).f_value, f);
        prop_assert!(f <= col.n() / 2 || col.n() <= 1);
    }

    #[test]
    fn transposed_side_swaps_roles(col in coloring(8)) {
        let x = solve_exact(&col, Side::X).size();
        let y = solve_exact(&col.transpose(), Side::Y).size();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn forest_json_round_trips(col in coloring(8)) {
        let forest = solve_both(&col).witness;
        let text = serde_json::to_string(&forest.to_json()).unwrap();
        let back: ForestJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_forest(), forest);
    }

    #[test]
    fn constructive_meets_floor(col in balanced(2, 40)) {
        let report = constructive_lower_bound(&col).unwrap();
        prop_assert!(validate_forest(&col, &report.forest).is_ok());
        prop_assert!(report.certified_size() >= lower_bound_floor(col.n() as u64) as usize);
        prop_assert!(report.certified_size() <= solve_both(&col).f_value);
    }

    #[test]
    fn f_meets_ceiling_on_balanced(col in balanced(2, 24)) {
        prop_assert!(solve_both(&col).f_value as u64 >= lower_bound_ceil(col.n() as u64));
    }

    #[test]
    fn koenig_duality(
        (l, r, edges) in (0usize..25, 0usize..25).prop_flat_map(|(l, r)| {
            let edge = (0..l.max(1), 0..r.max(1));
            (Just(l), Just(r), proptest::collection::vec(edge, 0..if l * r == 0 { 1 } else { 80 }))
        })
    ) {
        let edges: Vec<_> = edges.into_iter().filter(|&(a, b)| a < l && b < r).collect();
        let g = BipartiteGraph::new(l, r, edges);
        let m = max_bipartite_matching(&g);
        let cover = koenig_cover(&g, &m).unwrap();
        prop_assert_eq!(cover.len(), m.len());
        prop_assert!(cover.covers(&g));
        prop_assert_eq!(m.len(), common::kuhn_matching_size(&g));
    }
}
