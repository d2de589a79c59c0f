//! Command-line front end of the `mzm-readout` binary.
//!
//! Every subcommand reads one JSON config (all fields optional), writes CSV
//! tables and JSON reports into `--out`, and returns an exit code:
//! 0 success, 1 failed check, 2 config or I/O error, 3 numerical abort.

pub mod config;
pub mod output;

mod fig3;
mod fig4;
mod gate_sim;
mod readout_sim;
mod verify;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::effective::EffectiveError;
use crate::models::ModelError;
use crate::readout::ReadoutError;
use crate::sw::SwError;

pub use fig3::Fig3Config;
pub use fig4::Fig4Config;
pub use gate_sim::GateSimConfig;
pub use readout_sim::{ReadoutModel, ReadoutSimConfig};
pub use verify::VerifyConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("numerical abort: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<ReadoutError> for CliError {
    fn from(e: ReadoutError) -> Self {
        match e {
            ReadoutError::StepTooLarge { .. } | ReadoutError::TraceDrift { .. } | ReadoutError::EdgeOccupancy { .. } => {
                CliError::Numeric(e.to_string())
            }
            ReadoutError::Model(m) => m.into(),
            ReadoutError::Effective(m) => m.into(),
            e => CliError::Config(e.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::NonHermitian(_) => CliError::Numeric(e.to_string()),
            e => CliError::Config(e.to_string()),
        }
    }
}

impl From<EffectiveError> for CliError {
    fn from(e: EffectiveError) -> Self {
        match e {
            EffectiveError::Oracle(_) => CliError::Numeric(e.to_string()),
            EffectiveError::Model(m) => m.into(),
            e => CliError::Config(e.to_string()),
        }
    }
}

impl From<SwError> for CliError {
    fn from(e: SwError) -> Self {
        match e {
            SwError::Model(m) => m.into(),
            e => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mzm-readout", version, about = "Longitudinal Majorana qubit readout simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Longitudinal coupling and qubit splitting sweeps (six CSV panels).
    Fig3(CommonArgs),
    /// Readout infidelity and required integration time (two CSV panels).
    Fig4(CommonArgs),
    /// Run the oracle suite and write a JSON report.
    Verify(CommonArgs),
    /// Lindblad readout dynamics for both qubit states.
    ReadoutSim(CommonArgs),
    /// Two-qubit ZZ gate mediated by a shared resonator.
    GateSim(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// JSON config file; defaults are used for missing fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// RNG seed; overrides the config.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo samples per cell; overrides the config.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Outcome of a successful command.
#[derive(Debug)]
pub struct Outcome {
    pub outputs: Vec<PathBuf>,
    /// Names of failed checks; non-empty means exit code 1.
    pub failed: Vec<String>,
}

fn prepare_out(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

/// Runs one parsed command inside a pool with the requested thread count.
pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    let args = match cmd {
        Command::Fig3(a) | Command::Fig4(a) | Command::Verify(a) | Command::ReadoutSim(a) | Command::GateSim(a) => a,
    };
    if args.threads == Some(0) {
        return Err(CliError::Config("--threads must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    pool.install(|| {
        prepare_out(&args.out)?;
        match cmd {
            Command::Fig3(a) => fig3::run(a),
            Command::Fig4(a) => fig4::run(a),
            Command::Verify(a) => verify::run(a),
            Command::ReadoutSim(a) => readout_sim::run(a),
            Command::GateSim(a) => gate_sim::run(a),
        }
    })
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            for p in &o.outputs {
                println!("wrote {}", p.display());
            }
            if o.failed.is_empty() {
                0
            } else {
                eprintln!("failed checks: {}", o.failed.join(", "));
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Prints one line per check of a report.
fn print_checks(report: &output::RunReport) {
    for c in &report.checks {
        let status = match (c.kind, c.passed) {
            (output::CheckKind::Info, _) => "info",
            (_, true) => "pass",
            (_, false) => "FAIL",
        };
        println!(
            "{status:4} {:28} measured {:.6e} reference {:.6e} tol {:.1e}",
            c.name, c.measured, c.reference, c.tolerance
        );
    }
}

fn warn_unused(args: &CommonArgs, command: &str, takes_seed: bool) {
    if args.samples.is_some() {
        eprintln!("warning: --samples has no effect for {command}");
    }
    if args.seed.is_some() && !takes_seed {
        eprintln!("warning: --seed has no effect for {command}");
    }
}
