//! `placer`: solve, generate, verify and cross-check placement instances.
//!
//! Exit codes: 0 solved (or verified), 1 error or failed verification,
//! 2 infeasible, 3 oracle budget exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "placer", version, about = "Exact data and page placement for a handful of clients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance and emit a JSON report.
    Solve(SolveArgs),
    /// Generate an instance file.
    Gen(GenArgs),
    /// Re-score a report against its instance.
    Verify(VerifyArgs),
    /// Solve by exhaustive enumeration.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Dp,
    Pp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Random,
    Tightness,
}

#[derive(Debug, Args)]
struct CapsArgs {
    /// Same replica cap for every object.
    #[arg(long, conflicts_with = "caps_file")]
    replica_cap: Option<usize>,
    /// JSON array with one replica cap per object.
    #[arg(long)]
    caps_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Scaling parameter; required when object lengths differ.
    #[arg(long)]
    epsilon: Option<String>,
    #[command(flatten)]
    caps: CapsArgs,
    /// Refuse instances with more clients than this.
    #[arg(long, default_value_t = placer_core::DEFAULT_MAX_CLIENTS)]
    max_clients: usize,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run on the current thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Overridden by the PLACER_SEED environment variable.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    clients: usize,
    #[arg(long, default_value_t = 6)]
    objects: usize,
    #[arg(long, default_value_t = 1)]
    min_capacity: u64,
    #[arg(long, default_value_t = 4)]
    max_capacity: u64,
    /// `unit`, or `MIN:MAX` for lengths drawn in steps of 0.01.
    #[arg(long, default_value = "unit")]
    lengths: String,
    #[arg(long, default_value_t = 9)]
    max_demand: u32,
    #[arg(long, default_value_t = 9)]
    max_distance: u32,
    #[arg(long, default_value_t = 9)]
    max_install: u32,
    /// `LO:HI` range for client limits; omitted means no limits.
    #[arg(long)]
    client_limits: Option<String>,
    /// Tightness family scaling parameter.
    #[arg(long, default_value = "0.5")]
    epsilon: String,
    /// Tightness family short-object shrink; defaults to 1/(N-1).
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Maximum number of assignments to enumerate.
    #[arg(long, default_value_t = 100_000_000)]
    budget: u128,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[command(flatten)]
    caps: CapsArgs,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    sequential: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Gen(args) => commands::gen(args),
        Command::Verify(args) => commands::verify(args),
        Command::Oracle(args) => commands::oracle(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_ERROR)
        }
    }
}
