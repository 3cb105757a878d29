//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs with `cargo test --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use fork_forest::cli::{cmd_bench, cmd_solve, SideArg, EXIT_OK};
use fork_forest::generators::{extremal_coloring, random_balanced, random_coloring};
use fork_forest::matching::{
    koenig_cover, matching_weight, max_bipartite_matching, min_weight_perfect_matching, Matching,
};
use fork_forest::oracle::{all_balanced_colorings, all_colorings, brute_force_f, brute_force_max_forest};
use fork_forest::reduction::{build_reduction, fork_of_matching};
use fork_forest::{
    constructive_lower_bound, lower_bound_ceil, lower_bound_floor, solve_both, solve_exact, validate_forest, Coloring,
    Side,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ceil(n: usize) -> usize {
    lower_bound_ceil(n as u64) as usize
}

fn floor(n: usize) -> usize {
    lower_bound_floor(n as u64) as usize
}

fn seeds(tag: u64, n: usize, count: usize) -> impl ParallelIterator<Item = u64> {
    (0..count as u64).into_par_iter().map(move |i| tag << 48 | (n as u64) << 24 | i)
}

fn tightness() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;

    for n in [2, 3] {
        let min_f = all_balanced_colorings(n).map(|c| brute_force_f(&c).unwrap()).min().unwrap();
        let ok = min_f == 1 && min_f >= ceil(n);
        pass &= ok;
        notes.push(format!("exhaustive n={n} min f={min_f}"));
    }
    for n in [10, 20, 40] {
        let bad = seeds(1, n, 500)
            .filter(|&s| solve_both(&random_balanced(n, s)).f_value < ceil(n))
            .count();
        pass &= bad == 0;
        notes.push(format!("n={n} violations={bad}/500"));
    }
    let mut slack = Vec::new();
    let mut below_ceil = Vec::new();
    for n in 8..=64 {
        let col = extremal_coloring(n);
        let both = solve_both(&col);
        let ok = validate_forest(&col, &both.witness).is_ok() && (floor(n)..=ceil(n) + 1).contains(&both.f_value);
        pass &= ok;
        if both.f_value < ceil(n) {
            below_ceil.push(n.to_string());
        }
        slack.push(format!("{n}:{:+}", both.f_value as i64 - ceil(n) as i64));
    }
    println!("    extremal slack over ceiling bound per n: {}", slack.join(" "));
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 600.0;
    notes.push(format!(
        "extremal n=8..64 in [floor, ceil+1], below ceil at n={{{}}}, {secs:.1}s",
        below_ceil.join(",")
    ));
    Outcome {
        pass,
        detail: notes.join("; "),
    }
}

fn exact_vs_oracle() -> Outcome {
    let check = |col: &Coloring| {
        [Side::X, Side::Y]
            .iter()
            .all(|&side| solve_exact(col, side).size() == brute_force_max_forest(col, side).unwrap().0)
    };
    let mut total = 0;
    let mut bad = 0;
    for n in 1..=3 {
        let cols: Vec<Coloring> = all_colorings(n).collect();
        total += cols.len();
        bad += cols.par_iter().filter(|c| !check(c)).count();
    }
    for n in [4, 5] {
        total += 500;
        bad += seeds(2, n, 500).filter(|&s| !check(&random_coloring(n, 0.5, s))).count();
    }
    Outcome {
        pass: bad == 0,
        detail: format!("{total} colorings, {bad} mismatches"),
    }
}

fn weight_identity_holds(col: &Coloring, side: Side, m: &Matching) -> bool {
    let (g, split) = build_reduction(col, side);
    let forest = fork_of_matching(m, &split, &g).unwrap();
    matching_weight(m, &g).unwrap() as usize == col.n() - forest.size()
}

fn weight_identity() -> Outcome {
    let mut enumerated = 0usize;
    let mut bad = 0usize;
    for n in 1..=3 {
        for col in all_colorings(n) {
            for side in [Side::X, Side::Y] {
                let (g, _) = build_reduction(&col, side);
                common::for_each_perfect_matching(&g, |pm| {
                    enumerated += 1;
                    let m = Matching::from_pairs(pm.iter().copied()).unwrap();
                    bad += usize::from(!weight_identity_holds(&col, side, &m));
                });
            }
        }
    }
    let mut sampled = 0usize;
    for n in 1..=8 {
        let (count, fails) = seeds(3, n, 1000)
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let col = random_coloring(n, 0.5, s);
                let side = if s % 2 == 0 { Side::X } else { Side::Y };
                let (g, _) = build_reduction(&col, side);
                let m = common::random_perfect_matching(&g, &mut rng).unwrap();
                (1usize, usize::from(!weight_identity_holds(&col, side, &m)))
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        sampled += count;
        bad += fails;
    }
    Outcome {
        pass: bad == 0 && sampled >= 1000,
        detail: format!("{enumerated} enumerated + {sampled} random perfect matchings, {bad} exceptions"),
    }
}

fn constructive_guarantee() -> Outcome {
    let check = |col: &Coloring| match constructive_lower_bound(col) {
        Ok(r) => validate_forest(col, &r.forest).is_ok() && r.forest.size() >= floor(col.n()),
        Err(_) => false,
    };
    let mut total = 0;
    let mut bad = 0;
    for n in [2, 3] {
        for col in all_balanced_colorings(n) {
            total += 1;
            bad += usize::from(!check(&col));
        }
    }
    for n in 4..=40 {
        total += 2000;
        bad += seeds(4, n, 2000).filter(|&s| !check(&random_balanced(n, s))).count();
    }
    Outcome {
        pass: bad == 0,
        detail: format!("{total} balanced instances, {bad} violations"),
    }
}

fn koenig_duality() -> Outcome {
    let bad = seeds(5, 0, 200)
        .filter(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let g = common::random_bipartite(&mut rng, 50);
            let m = max_bipartite_matching(&g);
            match koenig_cover(&g, &m) {
                Ok(cover) => cover.len() != m.len() || !cover.covers(&g) || m.len() != common::kuhn_matching_size(&g),
                Err(_) => true,
            }
        })
        .count();
    Outcome {
        pass: bad == 0,
        detail: format!("200 graphs, {bad} violations"),
    }
}

fn matching_engine() -> Outcome {
    let bad = seeds(6, 0, 500)
        .filter(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let g = common::random_graph_with_pm(&mut rng, 10, 20);
            let got = min_weight_perfect_matching(&g)
                .ok()
                .and_then(|m| m.check_perfect(&g).ok().map(|()| matching_weight(&m, &g).unwrap()));
            got != common::brute_min_pm_weight(&g)
        })
        .count();
    Outcome {
        pass: bad == 0,
        detail: format!("500 graphs, {bad} mismatches"),
    }
}

fn running_time() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for i in 0..3 {
        let path = dir.path().join(format!("n256_{i}.txt"));
        std::fs::write(&path, random_balanced(256, 7000 + i).to_instance_string()).unwrap();
        let start = Instant::now();
        let out = cmd_solve(&path, SideArg::Both, false);
        let secs = start.elapsed().as_secs_f64();
        worst = worst.max(secs);
        pass &= out.code == EXIT_OK && secs < 60.0;
    }
    let bench = cmd_bench(&[16, 32, 64, 128, 256], 1, 0);
    print!("{}", bench.stdout.lines().map(|l| format!("    {l}\n")).collect::<String>());
    let rows = bench.stdout.lines().count();
    pass &= bench.code == EXIT_OK && rows == 6;
    Outcome {
        pass,
        detail: format!("3 solves at n=256, slowest {worst:.2}s; bench rows={}", rows.saturating_sub(1)),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("tightness of the lower bound", tightness),
        ("exact solver equals exhaustive oracle", exact_vs_oracle),
        ("matching weight identity", weight_identity),
        ("constructive forest meets floor bound", constructive_guarantee),
        ("König duality", koenig_duality),
        ("matching engine equals enumeration", matching_engine),
        ("running time at n=256 and bench output", running_time),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!outcome.pass);
        println!(
            "criterion {}: {verdict} {name} ({}) [{:.1}s]",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
