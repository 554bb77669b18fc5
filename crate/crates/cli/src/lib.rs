//! Command-line front end for the Casimir reduction-factor library.
//!
//! Each subcommand reads a TOML config, evaluates a sweep in parallel and
//! writes a CSV table (and optionally an SVG plot). Exit codes: 0 success,
//! 1 configuration error, 2 partial numerical failure, 3 total failure or
//! I/O error.

pub mod commands;
pub mod config;
pub mod plot;
pub mod table;

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use casimir_core::ImagAxisMode;
use commands::{CommandOutput, Status};
use config::{ConfigError, RawConfig, RunConfig};
use table::TableError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("output: {0}")]
    Output(#[from] TableError),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => EXIT_CONFIG,
            Error::Numerical(_) | Error::Output(_) => EXIT_FAILURE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lifshitz",
    version,
    about = "Casimir reduction factors for layered metallic mirrors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Effective damping rate of two-carrier presets versus frequency.
    Gamma(CommonArgs),
    /// Imaginary-axis permittivity by direct substitution and by Kramers-Kronig.
    Epsilon(CommonArgs),
    /// Reduction factor eta versus plate separation.
    Eta(CommonArgs),
    /// Percent difference of eta between cases and a baseline.
    Delta(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Substitute,
    Kk,
}

impl From<ModeArg> for ImagAxisMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Substitute => ImagAxisMode::Substitute,
            ModeArg::Kk => ImagAxisMode::KramersKronig,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// CSV destination; stdout when neither this nor `[output] csv` is set.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// SVG plot destination.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Override the config's imaginary-axis continuation mode.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::Gamma(a) | Command::Epsilon(a) | Command::Eta(a) | Command::Delta(a) => a,
        }
    }
}

/// Size the global rayon pool from `LIFSHITZ_THREADS` (unset or empty means
/// one worker per core).
pub fn configure_threads() -> Result<(), ConfigError> {
    let Ok(text) = std::env::var("LIFSHITZ_THREADS") else {
        return Ok(());
    };
    if text.trim().is_empty() {
        return Ok(());
    }
    let threads: usize =
        text.trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| ConfigError::Invalid {
                key: "LIFSHITZ_THREADS".into(),
                message: format!("`{text}` is not a positive integer"),
            })?;
    // A pool set up earlier in the same process is kept.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

/// Resolve the config and run one subcommand without writing anything.
pub fn execute(command: &Command) -> Result<(RunConfig, CommandOutput), Error> {
    let args = command.args();
    let raw = RawConfig::from_path(&args.config)?;
    let cfg = RunConfig::resolve(&raw, args.mode.map(Into::into))?;
    let out = match command {
        Command::Gamma(_) => commands::cmd_gamma(&cfg)?,
        Command::Epsilon(_) => commands::cmd_epsilon(&cfg)?,
        Command::Eta(_) => commands::cmd_eta(&cfg)?,
        Command::Delta(_) => commands::cmd_delta(&cfg)?,
    };
    Ok((cfg, out))
}

fn write_outputs(
    args: &CommonArgs,
    cfg: &RunConfig,
    out: &CommandOutput,
) -> Result<(), TableError> {
    match args.output.as_ref().or(cfg.output.csv.as_ref()) {
        Some(path) => out.table.write_atomic(path)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            out.table.write_to(&mut lock)?;
            lock.flush()?;
        }
    }
    if let Some(path) = args.plot.as_ref().or(cfg.output.svg.as_ref()) {
        table::write_atomic(path, out.plot.render().as_bytes())?;
    }
    Ok(())
}

/// Run a parsed command line and return the process exit code.
pub fn run(cli: &Cli) -> i32 {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return EXIT_CONFIG;
    }
    let (cfg, out) = match execute(&cli.command) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = write_outputs(cli.command.args(), &cfg, &out) {
        eprintln!("error: {}", Error::from(e));
        return EXIT_FAILURE;
    }
    match out.status {
        Status::Complete => EXIT_OK,
        Status::Partial => {
            eprintln!("warning: some points did not converge (converged = 0 in the output)");
            EXIT_PARTIAL
        }
        Status::Failed => {
            eprintln!("error: no point converged");
            EXIT_FAILURE
        }
    }
}
