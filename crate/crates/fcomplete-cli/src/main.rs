use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fcomplete::reductions::Reduction;
use fcomplete::threshold::ColoringMode;

mod check;
mod generate;
mod io;
mod problem;
mod solve;

use problem::Problem;

/// Exact F-completion solvers, hardness gadgets and class recognizers.
#[derive(Parser, Debug)]
#[command(name = "fcomplete", version)]
struct Cli {
    /// Worker threads for coloring and seed iteration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Solve a completion instance and print "OPT t" with the pairs, or "NO".
    Solve(SolveArgs),
    /// Build a hardness instance from a DIMACS CNF file.
    Generate(GenerateArgs),
    /// Report class membership and, for trivially perfect graphs, the bag table.
    Check(CheckArgs),
    /// Run the branching oracle, or list minimal completions.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Subexp,
    Branch,
    Auto,
}

#[derive(Args, Debug)]
#[group(id = "budget", required = true, multiple = false, args = ["k", "optimize"])]
struct Budget {
    /// Budget: report a minimum solution of size at most k.
    #[arg(long)]
    k: Option<usize>,
    /// Search for the optimum without a budget.
    #[arg(long)]
    optimize: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// tp, threshold, pseudosplit, split or ffree:<patterns>.
    #[arg(long, value_parser = problem::parse)]
    problem: Problem,
    #[command(flatten)]
    budget: Budget,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// Delete edges instead of adding them (branching only).
    #[arg(long)]
    deletion: bool,
    /// Coloring family for threshold completion.
    #[arg(long, default_value = "exhaustive")]
    coloring: ColoringMode,
    /// Number of random colorings in randomized mode.
    #[arg(long)]
    trials: Option<usize>,
    /// RNG seed; FCOMPLETE_SEED takes precedence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print solver statistics to stderr.
    #[arg(long)]
    stats: bool,
    /// Re-check F-freeness of the modified graph before printing.
    #[arg(long)]
    verify: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Edge-list file, or - for stdin.
    input: PathBuf,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    reduction: Reduction,
    /// Emit the complement instance (completion and deletion swap).
    #[arg(long)]
    complement: bool,
    /// Instance file; defaults to stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Role table file; defaults to <output>.roles when -o is given.
    #[arg(long)]
    roles: Option<PathBuf>,
    /// Also write the forward solution of the first satisfying assignment.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// DIMACS CNF file, or - for stdin.
    input: PathBuf,
}

#[derive(Args, Debug)]
struct CheckArgs {
    input: PathBuf,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_parser = problem::parse)]
    problem: Problem,
    #[command(flatten)]
    budget: Budget,
    #[arg(long)]
    deletion: bool,
    /// List all inclusion-minimal completions of size at most k.
    #[arg(long, requires = "k")]
    minimal: bool,
    #[arg(long)]
    stats: bool,
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    let result = fcomplete::par::with_threads(jobs, move || match cli.cmd {
        Cmd::Solve(a) => solve::run_solve(&a),
        Cmd::Generate(a) => generate::run_generate(&a).map(|_| true),
        Cmd::Check(a) => check::run_check(&a).map(|_| true),
        Cmd::Oracle(a) => solve::run_oracle(&a),
    });
    match result {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
