mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{Format, Outcome};

/// Verify graded polynomial identities of small Lie algebras over finite fields.
#[derive(Parser, Debug)]
#[command(name = "gradlie", version)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    output: Format,
    /// Size of the worker pool (defaults to the number of cores).
    #[arg(long, env = "GRADLIE_WORKERS", global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether an expression is an identity of an algebra.
    Check(CheckArgs),
    /// Compare identity spaces with consequence spans of a generating set.
    BasisCheck(BasisCheckArgs),
    /// Identity space (and optionally a consequence span) in one window.
    Space(SpaceArgs),
    /// Structural analysis of an algebra.
    Analyze(AnalyzeArgs),
    /// Enumerate and classify Z2-gradings of M2 or sl2.
    ClassifyGradings(ClassifyArgs),
    /// Compare [h, u] with the q-fold commutator for u = e12 + b e21.
    Remark(RemarkArgs),
}

#[derive(Args, Debug, Serialize)]
struct AlgArgs {
    /// sl2, gl2, m2-I, m2-II, m2-III, span-e11-e12, heisenberg, or a .toml file.
    #[arg(long, default_value = "sl2")]
    alg: String,
    /// Field order (prime or prime power); ignored for .toml files.
    #[arg(long, default_value_t = 5)]
    q: u32,
    /// Non-square parameter for m2-III (defaults to the first non-square).
    #[arg(long)]
    b: Option<i64>,
}

#[derive(Args, Debug, Serialize)]
struct ModeArgs {
    /// Enumerate every assignment (default).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Evaluate on this many random assignments instead.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Largest number of assignments enumerated exhaustively.
    #[arg(long, default_value_t = gradlie::identities::DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Args, Debug, Serialize)]
struct CheckArgs {
    #[command(flatten)]
    alg: AlgArgs,
    /// Expression, e.g. "[z1, y1^5] - [z1, y1]".
    #[arg(long, required_unless_present = "builtin", conflicts_with = "builtin")]
    expr: Option<String>,
    /// Named expression or set: sem1, sem2, yy, zz, zyq_zy, S, lema5.
    #[arg(long)]
    builtin: Option<String>,
    /// Substitute homogeneous elements of matching parity (default).
    #[arg(long, conflicts_with = "ordinary")]
    graded: bool,
    /// Substitute arbitrary elements.
    #[arg(long)]
    ordinary: bool,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args, Debug, Serialize)]
struct BasisCheckArgs {
    #[command(flatten)]
    alg: AlgArgs,
    /// S, lema5, another built-in, or expressions separated by ';'.
    #[arg(long)]
    gens: String,
    /// `default` or windows such as "y1:1,y2:1;z1:1,y1:5".
    #[arg(long, conflicts_with = "total_degree")]
    windows: Option<String>,
    /// Every window with total degree up to N (see --per-var-cap).
    #[arg(long)]
    total_degree: Option<u32>,
    #[arg(long, default_value_t = 5)]
    per_var_cap: u32,
    #[arg(long, default_value_t = gradlie::identities::DEFAULT_BUDGET)]
    budget: u128,
    /// Random soundness samples when a generator is too large to check exhaustively.
    #[arg(long, default_value_t = 100_000)]
    soundness_samples: u64,
    /// Seed for the random substitution batches.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Args, Debug, Serialize)]
struct SpaceArgs {
    #[command(flatten)]
    alg: AlgArgs,
    /// Variables, e.g. "y1,z1,z2"; each gets degree cap 1.
    #[arg(long, required_unless_present = "window", conflicts_with = "window")]
    vars: Option<String>,
    /// Accepted for readability: --vars always describes the multilinear window.
    #[arg(long)]
    multilinear: bool,
    /// Window caps, e.g. "z1:1,y1:5".
    #[arg(long)]
    window: Option<String>,
    /// Also compute the consequence span of these generators.
    #[arg(long)]
    gens: Option<String>,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args, Debug, Serialize)]
struct AnalyzeArgs {
    #[command(flatten)]
    alg: AlgArgs,
    /// Largest dimension for the ideal-lattice computations.
    #[arg(long, default_value_t = gradlie::algebra::DEFAULT_DIM_CAP)]
    dim_cap: usize,
    /// Run the nilpotent-implies-abelian probe with up to this many generators.
    #[arg(long)]
    probe: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    probe_budget: u64,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Root decomposition under ad of this even element, given by coordinates "1,0,0".
    #[arg(long)]
    root: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TargetArg {
    M2,
    Gl2,
    Sl2,
}

#[derive(Args, Debug, Serialize)]
struct ClassifyArgs {
    #[arg(long, value_enum)]
    target: TargetArg,
    /// Prime field order.
    #[arg(long, default_value_t = 5)]
    q: u32,
}

#[derive(Args, Debug, Serialize)]
struct RemarkArgs {
    #[arg(long, default_value_t = 5)]
    q: u32,
    /// Use this b instead of the first non-square.
    #[arg(long)]
    b: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let (name, config, result) = match &cli.command {
        Command::Check(a) => ("check", output::config(a), commands::check(a)),
        Command::BasisCheck(a) => ("basis-check", output::config(a), commands::basis_check(a)),
        Command::Space(a) => ("space", output::config(a), commands::space(a)),
        Command::Analyze(a) => ("analyze", output::config(a), commands::analyze(a)),
        Command::ClassifyGradings(a) => ("classify-gradings", output::config(a), commands::classify(a)),
        Command::Remark(a) => ("remark", output::config(a), commands::remark(a)),
    };
    let outcome: Outcome = output::emit(cli.output, name, config, result);
    ExitCode::from(outcome.code())
}
