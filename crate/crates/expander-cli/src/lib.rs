//! Command-line driver: argument parsing, dispatch, and the exit-code
//! taxonomy.
//!
//! Exit codes:
//! - `0` success / property verified;
//! - `1` certified failure (a concrete witness violates the property);
//! - `2` usage or input-validation error;
//! - `3` refusal: enumeration budget exceeded, search or sampling budgets
//!   exhausted, or an eigensolver that did not converge. A refusal is
//!   neither a pass nor a fail.

pub mod commands;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use expander_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFIED_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "expander",
    version,
    about = "Construct and certify onesided lossless bipartite expanders"
)]
pub struct Cli {
    /// Cap worker parallelism (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Dense,
    Iterative,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SamplerArg {
    Rejection,
    Swap,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Paper,
    Desk,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the parameter bundle for a balance interval and loss target.
    Plan(PlanArgs),
    /// Generate a random (k, D0)-biregular bipartite graph.
    GenOuter(GenOuterArgs),
    /// Search for a certified lossless gadget.
    SearchGadget(SearchGadgetArgs),
    /// Place a gadget copy on each right neighborhood of an outer graph.
    Compose(ComposeArgs),
    /// Verify lossless expansion exactly or by sampling.
    Verify(VerifyArgs),
    /// Walk-matrix spectrum of a graph (optionally of its nonlazy square).
    Spectrum(SpectrumArgs),
    /// Heavy-vertex accounting for a set over a composition.
    Diagnose(DiagnoseArgs),
    /// Run the full pipeline and write artifacts with a manifest.
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub beta1: f64,
    #[arg(long)]
    pub beta2: f64,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, value_enum, default_value = "desk")]
    pub mode: ModeArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenOuterArgs {
    #[arg(long)]
    pub n_left: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub d_right: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: std::path::PathBuf,
    /// Rejection resamples whole pairings; swap repairs duplicates and is
    /// required once (k-1)(D0-1)/2 is large.
    #[arg(long, value_enum, default_value = "rejection")]
    pub method: SamplerArg,
}

#[derive(Debug, Args)]
pub struct SearchGadgetArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub beta0: f64,
    #[arg(long)]
    pub d0: usize,
    #[arg(long)]
    pub mu0: f64,
    #[arg(long)]
    pub eps0: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub max_attempts: usize,
    /// Graph output path; on exhaustion the best candidate is written here.
    #[arg(long)]
    pub out: std::path::PathBuf,
    /// Certificate JSON output path.
    #[arg(long)]
    pub cert: std::path::PathBuf,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    #[arg(long)]
    pub outer: std::path::PathBuf,
    #[arg(long)]
    pub gadget: std::path::PathBuf,
    #[arg(long)]
    pub out: std::path::PathBuf,
    /// Shuffle each vertex's gadget ports with this seed instead of the
    /// canonical order.
    #[arg(long)]
    pub port_shuffle_seed: Option<u64>,
    /// Optional balance interval to check.
    #[arg(long)]
    pub beta1: Option<f64>,
    #[arg(long)]
    pub beta2: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: std::path::PathBuf,
    /// Exhaustive enumeration (certifying).
    #[arg(long, conflicts_with = "sampled")]
    pub exact: bool,
    /// Random sampling (non-certifying evidence).
    #[arg(long, requires = "trials")]
    pub sampled: bool,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub mu: f64,
    #[arg(long)]
    pub eps: f64,
    /// Required for --sampled.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub graph: std::path::PathBuf,
    /// Square the bipartite input first.
    #[arg(long)]
    pub nonlazy_square: bool,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[arg(long)]
    pub outer: std::path::PathBuf,
    #[arg(long)]
    pub gadget: std::path::PathBuf,
    /// Left vertex set: whitespace-separated indices, `#` comments.
    #[arg(long)]
    pub set: std::path::PathBuf,
    #[arg(long)]
    pub mu0: f64,
    #[arg(long)]
    pub eps0: f64,
    /// Final-target loss; defaults to min(1, 10·eps0).
    #[arg(long)]
    pub eps: Option<f64>,
    /// Gadget certificate JSON backing the lower-bound line.
    #[arg(long)]
    pub cert: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Parameter bundle JSON, as emitted by `plan --json`.
    #[arg(long)]
    pub params: std::path::PathBuf,
    /// `random:<n_left>:<seed>` or `file:<path>`.
    #[arg(long)]
    pub outer: String,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out_dir: std::path::PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 50)]
    pub max_attempts: usize,
    #[arg(long, value_enum, default_value = "swap")]
    pub outer_method: SamplerArg,
    #[arg(long)]
    pub json: bool,
}

/// Maps a core error onto the exit-code taxonomy.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. }
        | Error::RejectionExhausted { .. }
        | Error::SwapRepairExhausted { .. }
        | Error::NonConvergence { .. }
        | Error::SearchExhausted { .. } => EXIT_REFUSAL,
        Error::Stage { source, .. } => exit_code_for(source),
        _ => EXIT_USAGE,
    }
}

/// Parses and dispatches; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(threads) = cli.threads {
        // a later call fails harmlessly if a pool already exists (tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let result = match cli.command {
        Command::Plan(a) => commands::plan(a),
        Command::GenOuter(a) => commands::gen_outer(a),
        Command::SearchGadget(a) => commands::search_gadget(a),
        Command::Compose(a) => commands::compose(a),
        Command::Verify(a) => commands::verify(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Diagnose(a) => commands::diagnose(a),
        Command::Run(a) => commands::run_pipeline(a),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let mut source = std::error::Error::source(&err);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            exit_code_for(&err)
        }
    }
}
