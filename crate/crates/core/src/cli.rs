//! Command implementations behind the `forkforest` binary.
//!
//! Every command returns a [`CmdOutput`] instead of printing, so the binary
//! and the tests share one code path. Exit codes: 0 ok, 2 parse error, 3 I/O
//! error, 4 failed precondition, 5 verification failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{lower_bound_ceil, lower_bound_floor, validate_forest, Coloring, ForestJson, Side};
use crate::constructive::{constructive_lower_bound, ConstructError};
use crate::generators::{extremal_coloring, random_balanced, random_coloring};
use crate::oracle::all_balanced_colorings;
use crate::reduction::{solve_both, solve_exact_with_weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

/// Largest `n` swept exhaustively by `verify`.
pub const EXHAUSTIVE_MAX_N: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "forkforest", version, about = "Fork forests in two-colored K_{n,n}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum fork forest of an instance file (JSON report)
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        /// Dump the optimal matching as an edge list on stderr
        #[arg(long)]
        dump_matching: bool,
    },
    /// Certified lower-bound forest of a balanced instance (JSON report)
    Construct { instance: PathBuf },
    /// Batch check of the lower bound over exhaustive and random instances (CSV)
    Verify {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory receiving offending instances
        #[arg(long, default_value = ".")]
        dump_dir: PathBuf,
    },
    /// Emit an instance file on stdout
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Black probability for the bernoulli family
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Mean solve and construct times per n (CSV)
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![16, 32, 64, 128, 256])]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    X,
    Y,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Extremal,
    Balanced,
    Bernoulli,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CmdOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        CmdOutput {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

pub fn run(cli: Cli) -> CmdOutput {
    match cli.command {
        Command::Solve {
            instance,
            side,
            dump_matching,
        } => cmd_solve(&instance, side, dump_matching),
        Command::Construct { instance } => cmd_construct(&instance),
        Command::Verify {
            n_max,
            samples,
            seed,
            dump_dir,
        } => cmd_verify(n_max, samples, seed, &dump_dir),
        Command::Gen { family, n, seed, p } => cmd_gen(family, n, seed, p),
        Command::Bench { n_list, samples, seed } => cmd_bench(&n_list, samples, seed),
    }
}

fn load(path: &Path) -> Result<Coloring, CmdOutput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdOutput::fail(EXIT_IO, format!("error: cannot read {}: {e}", path.display())))?;
    text.parse()
        .map_err(|e| CmdOutput::fail(EXIT_PARSE, format!("error: {}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
struct SolveReport {
    side: &'static str,
    size: usize,
    min_matching_weight: u64,
    elapsed_seconds: f64,
    forest: ForestJson,
}

pub fn cmd_solve(path: &Path, side: SideArg, dump_matching: bool) -> CmdOutput {
    let coloring = match load(path) {
        Ok(c) => c,
        Err(out) => return out,
    };
    let start = Instant::now();
    let (label, forest, weight, matching) = match side {
        SideArg::X | SideArg::Y => {
            let (label, s) = if side == SideArg::X { ("X", Side::X) } else { ("Y", Side::Y) };
            let sol = solve_exact_with_weight(&coloring, s);
            (label, sol.forest, sol.min_weight, sol.matching)
        }
        SideArg::Both => {
            let both = solve_both(&coloring);
            ("both", both.witness, both.min_weight, both.matching)
        }
    };
    let elapsed = start.elapsed().as_secs_f64();
    let report = SolveReport {
        side: label,
        size: forest.size(),
        min_matching_weight: weight,
        elapsed_seconds: elapsed,
        forest: forest.to_json(),
    };
    let mut out = CmdOutput::ok(to_json_line(&report));
    if dump_matching {
        out.stderr = matching.to_edge_list();
    }
    out
}

pub fn cmd_construct(path: &Path) -> CmdOutput {
    let coloring = match load(path) {
        Ok(c) => c,
        Err(out) => return out,
    };
    match constructive_lower_bound(&coloring) {
        Ok(report) => CmdOutput::ok(to_json_line(&report.to_json())),
        Err(e @ (ConstructError::Unbalanced { .. } | ConstructError::TooSmall(_))) => {
            CmdOutput::fail(EXIT_PRECONDITION, format!("error: {e}"))
        }
        Err(e) => CmdOutput::fail(EXIT_VERIFY, format!("error: {e}")),
    }
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    s.push('\n');
    s
}

/// Per-instance seed used by `verify` for sample `index` at side size `n`.
pub fn sample_seed(base: u64, n: usize, index: usize) -> u64 {
    base.wrapping_mul(1_000_003)
        .wrapping_add((n as u64) << 32)
        .wrapping_add(index as u64)
}

/// Outcome of checking one balanced instance.
#[derive(Debug, Clone)]
pub struct InstanceCheck {
    pub f_value: usize,
    pub constructive_size: Option<usize>,
    pub problems: Vec<String>,
}

/// Checks one balanced instance: the exact value must reach
/// `⌈(1 − 1/√2)n⌉`, the constructive forest `⌊(1 − 1/√2)n⌋`, and both
/// forests must validate. Bounds are only enforced for `n ≥ 2`.
pub fn check_instance(coloring: &Coloring) -> InstanceCheck {
    let n = coloring.n();
    let both = solve_both(coloring);
    let mut problems = Vec::new();
    if !validate_forest(coloring, &both.witness).is_ok() {
        problems.push("exact witness fails validation".to_string());
    }
    let mut constructive_size = None;
    if n >= 2 {
        let ceil = lower_bound_ceil(n as u64) as usize;
        if both.f_value < ceil {
            problems.push(format!("f = {} below ceiling bound {ceil}", both.f_value));
        }
        match constructive_lower_bound(coloring) {
            Ok(report) => {
                let size = report.certified_size();
                constructive_size = Some(size);
                if !validate_forest(coloring, &report.forest).is_ok() {
                    problems.push("constructive forest fails validation".to_string());
                }
                if size < report.bound_floor {
                    problems.push(format!("constructive size {size} below floor bound {}", report.bound_floor));
                }
                if size > both.f_value {
                    problems.push(format!("constructive size {size} exceeds exact value {}", both.f_value));
                }
            }
            Err(e) => problems.push(format!("constructive failed: {e}")),
        }
    }
    InstanceCheck {
        f_value: both.f_value,
        constructive_size,
        problems,
    }
}

pub fn cmd_verify(n_max: usize, samples: usize, seed: u64, dump_dir: &Path) -> CmdOutput {
    let mut csv = String::from("n,bound_floor,bound_ceil,min_f_observed,extremal_f,violations\n");
    let mut stderr = String::new();
    let mut total_violations = 0usize;
    for n in 1..=n_max {
        let instances: Vec<Coloring> = if n <= EXHAUSTIVE_MAX_N {
            all_balanced_colorings(n).collect()
        } else {
            (0..samples).map(|i| random_balanced(n, sample_seed(seed, n, i))).collect()
        };
        // par_iter + collect keeps instance order
        let checks: Vec<InstanceCheck> = instances.par_iter().map(check_instance).collect();
        let min_f = checks.iter().map(|c| c.f_value).min();
        let extremal_f = (n >= 2).then(|| solve_both(&extremal_coloring(n)).f_value);
        let mut violations = 0;
        for (i, (inst, check)) in instances.iter().zip(&checks).enumerate() {
            if check.problems.is_empty() {
                continue;
            }
            violations += 1;
            let file = dump_dir.join(format!("violation_n{n}_i{i}.txt"));
            let _ = writeln!(stderr, "n={n} instance {i}: {}", check.problems.join("; "));
            if let Err(e) = std::fs::write(&file, inst.to_instance_string()) {
                let _ = writeln!(stderr, "cannot write {}: {e}", file.display());
            }
        }
        total_violations += violations;
        let _ = writeln!(
            csv,
            "{n},{},{},{},{},{violations}",
            lower_bound_floor(n as u64),
            lower_bound_ceil(n as u64),
            min_f.map_or("NA".to_string(), |v| v.to_string()),
            extremal_f.map_or("NA".to_string(), |v| v.to_string()),
        );
    }
    CmdOutput {
        stdout: csv,
        stderr,
        code: if total_violations == 0 { EXIT_OK } else { EXIT_VERIFY },
    }
}

pub fn cmd_gen(family: Family, n: usize, seed: u64, p: f64) -> CmdOutput {
    if n == 0 {
        return CmdOutput::fail(EXIT_PRECONDITION, "error: n must be at least 1");
    }
    let coloring = match family {
        Family::Extremal if n < 2 => {
            return CmdOutput::fail(EXIT_PRECONDITION, "error: extremal family needs n ≥ 2");
        }
        Family::Extremal => extremal_coloring(n),
        Family::Balanced => random_balanced(n, seed),
        Family::Bernoulli if !(0.0..=1.0).contains(&p) => {
            return CmdOutput::fail(EXIT_PRECONDITION, format!("error: p = {p} outside [0, 1]"));
        }
        Family::Bernoulli => random_coloring(n, p, seed),
    };
    CmdOutput::ok(coloring.to_instance_string())
}

pub fn cmd_bench(n_list: &[usize], samples: usize, seed: u64) -> CmdOutput {
    let mut csv = String::from("n,mean_solve_seconds,mean_construct_seconds\n");
    let samples = samples.max(1);
    for &n in n_list {
        if n < 2 {
            return CmdOutput::fail(EXIT_PRECONDITION, format!("error: bench sizes must be ≥ 2 (got {n})"));
        }
        let mut solve = 0.0;
        let mut construct = 0.0;
        for i in 0..samples {
            let col = random_balanced(n, sample_seed(seed, n, i));
            let t = Instant::now();
            std::hint::black_box(solve_both(&col));
            solve += t.elapsed().as_secs_f64();
            let t = Instant::now();
            std::hint::black_box(constructive_lower_bound(&col).expect("balanced input"));
            construct += t.elapsed().as_secs_f64();
        }
        let k = samples as f64;
        let _ = writeln!(csv, "{n},{:.6},{:.6}", solve / k, construct / k);
    }
    CmdOutput::ok(csv)
}
