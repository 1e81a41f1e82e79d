//! `zc`: detect entanglement of 2x2 and 2x4 states, generate example families
//! and sweep the zero-concurrence entangled family.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Parser, Debug)]
#[command(name = "zc", version, about = "PPT and generalized-concurrence entanglement detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the detection pipeline on a state file.
    Detect(InputArgs),
    /// Generate a state from a named family.
    Gen(GenArgs),
    /// Bring a rank-2 2x4 state to canonical form.
    Canonical(InputArgs),
    /// Concurrence for one conjugation, or the searched maximum.
    Concurrence(ConcurrenceArgs),
    /// Partial-transpose test.
    Ppt(PptArgs),
    /// Tabulate maximal concurrence and PPT eigenvalue over a (q1, phi) grid.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Local optimizer used by the concurrence search.
    #[arg(long, default_value = "nelder-mead")]
    optimizer: String,
    /// Objective evaluations per search start.
    #[arg(long, default_value_t = 1200)]
    max_evals: usize,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// separable, zce, pptform or random.
    family: String,
    #[arg(long)]
    q1: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    /// Product terms of a separable state.
    #[arg(long, default_value_t = 2)]
    terms: usize,
    #[arg(long, default_value_t = 4)]
    n_b: usize,
    /// Two-qubit state file for `pptform`.
    #[arg(long)]
    tilde: Option<PathBuf>,
    /// Apply seeded random local unitaries.
    #[arg(long)]
    rotate: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ConcurrenceArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Conjugation parameters `{"A", "b", "t"}`; searched when absent.
    #[arg(long)]
    params: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PptArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// `eigen` or `sylvester`.
    #[arg(long, default_value = "eigen")]
    psd_test: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 0.1)]
    q1_min: f64,
    #[arg(long, default_value_t = 0.9)]
    q1_max: f64,
    #[arg(long, default_value_t = 5)]
    q1_steps: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi_min: f64,
    #[arg(long, default_value_t = std::f64::consts::PI, allow_negative_numbers = true)]
    phi_max: f64,
    #[arg(long, default_value_t = 5)]
    phi_steps: usize,
    /// Apply seeded random local unitaries to every grid state.
    #[arg(long)]
    rotate: bool,
    #[command(flatten)]
    common: Common,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed '{s}': {e}"))
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("ZC_LOG_LEVEL", "error");
    env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .init();
}

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Detect(a) => commands::detect(&a),
        Command::Gen(a) => commands::gen(&a),
        Command::Canonical(a) => commands::canonical(&a),
        Command::Concurrence(a) => commands::concurrence(&a),
        Command::Ppt(a) => commands::ppt(&a),
        Command::Sweep(a) => commands::sweep(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::error_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0xC0FFEE").unwrap(), DEFAULT_SEED);
        assert_eq!(parse_seed("7").unwrap(), 7);
        assert!(parse_seed("0xZZ").is_err());
    }

    #[test]
    fn cli_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
