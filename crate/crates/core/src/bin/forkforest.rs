use clap::Parser;
use fork_forest::cli::{run, Cli};

fn main() {
    let out = run(Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
