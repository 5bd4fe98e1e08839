//! `schur`: bounds, witnesses, SAT encodings and exact values of generalized
//! Schur numbers from the command line.

mod commands;
mod exit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use exit::CliError;

#[derive(Parser)]
#[command(name = "schur", version, about = "Generalized Schur numbers S(r; k0, ..., k(r-1))")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A problem given as `r k0 k1 ...` or as `--stu s,t,u`.
#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Number of colors followed by one equation length per color.
    #[arg(value_name = "R K0 K1", required_unless_present = "stu")]
    values: Vec<String>,

    /// Three-color problem S(3; s, t, u).
    #[arg(long, value_name = "S,T,U", conflicts_with = "values")]
    stu: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverKind {
    Embedded,
    External,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Which SAT solver answers the queries.
    #[arg(long, value_enum, default_value_t = SolverKind::Embedded)]
    solver: SolverKind,

    /// External solver command; the DIMACS path is appended.
    #[arg(long, env = "SCHUR_EXT_SOLVER", value_name = "CMD")]
    external_cmd: Option<String>,

    /// Directory for temporary DIMACS files.
    #[arg(long, value_name = "DIR")]
    scratch_dir: Option<PathBuf>,

    /// Conflict budget per solver call (embedded solver).
    #[arg(long, value_name = "N")]
    conflicts: Option<u64>,

    /// Wall-clock budget in seconds.
    #[arg(long, value_name = "SECS")]
    time_limit: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    Case1,
    Case2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Ramp,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable bound.
    Bounds {
        #[command(flatten)]
        spec: SpecArgs,
        /// JSON map from "k0,k1,..." to Ramsey numbers.
        #[arg(long, value_name = "PATH")]
        ramsey_table: Option<PathBuf>,
    },
    /// Check a coloring for monochromatic solutions.
    Verify {
        /// Coloring JSON: {"n": .., "r": .., "colors": [..]}.
        coloring: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Write the CNF encoding of "[1, n] has a valid coloring" as DIMACS.
    Encode {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'n', long)]
        n: usize,
        /// Output file; standard output when absent.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Decide whether [1, n] has a valid coloring.
    Solve {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'n', long)]
        n: usize,
        /// Where to write the witness coloring when satisfiable.
        #[arg(long, value_name = "PATH")]
        witness_out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Solve a DIMACS file and answer in SAT-competition format
    /// (exit 10 = sat, 20 = unsat).
    Sat {
        file: PathBuf,
        /// Conflict budget; exhausting it prints "s UNKNOWN".
        #[arg(long, value_name = "N")]
        conflicts: Option<u64>,
    },
    /// Compute the exact value by first-unsat search.
    Search {
        #[command(flatten)]
        spec: SpecArgs,
        /// First interval length to probe (default: best lower bound).
        #[arg(long)]
        start: Option<usize>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Ramp)]
        strategy: StrategyArg,
        /// Solver calls run concurrently per round.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Witness store directory.
        #[arg(long, value_name = "DIR", default_value = "witnesses")]
        witness_dir: PathBuf,
        /// Maximum number of solver calls.
        #[arg(long, value_name = "N")]
        max_probes: Option<usize>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check a claimed value v: [1, v-1] colorable and [1, v] not.
    Check {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_name = "V")]
        value: usize,
        /// Where to write the witness on [1, v-1].
        #[arg(long, value_name = "PATH")]
        witness_out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Emit an explicit three-color witness coloring.
    Construct {
        #[arg(value_enum)]
        case: Case,
        #[arg(long)]
        u: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Difference edge coloring of K_(n+1) derived from a coloring of [1, n].
    Embed {
        coloring: PathBuf,
        /// Also search for a monochromatic clique of this size.
        #[arg(long, value_name = "K", requires = "color")]
        clique: Option<usize>,
        #[arg(long, value_name = "C")]
        color: Option<usize>,
    },
    /// Recompute a table of known values.
    Table {
        #[arg(value_parser = ["table1", "table2", "table3"])]
        name: String,
        /// Skip rows whose expected value exceeds this.
        #[arg(long, value_name = "N")]
        max_value: Option<usize>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Exhaustive backtracking value for tiny instances.
    Brute {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 30)]
        cap: usize,
        /// Node budget for the backtracking search.
        #[arg(long, default_value_t = schur_core::oracle::DEFAULT_NODE_BUDGET)]
        nodes: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json { Format::Json } else { cli.format };
    match commands::dispatch(cli.command, format) {
        Ok(code) => code,
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            if code == exit::USAGE {
                eprintln!("see `schur --help`");
            }
            ExitCode::from(code)
        }
    }
}
