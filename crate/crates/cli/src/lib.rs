//! Command-line surface for `ppm-link`: single-point evaluation, parameter
//! sweeps, figure data and Monte Carlo validation.
//!
//! Every command renders its complete output into memory first; the caller
//! then writes it to standard output or atomically to `--out`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub mod figure;
pub mod format;
pub mod pie;
pub mod sweep;
pub mod validate;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PPM_LINK_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ppm_link::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid figure config: {0}")]
    FigureConfig(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum SchemeArg {
    Ppm,
    Ook,
}

impl SchemeArg {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeArg::Ppm => "ppm",
            SchemeArg::Ook => "ook",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ppm-link",
    version,
    about = "Photon information efficiency of PPM and OOK with noisy direct detection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one operating point and print a JSON object.
    Pie(pie::PieArgs),
    /// Evaluate a logarithmic grid over n_a and print CSV.
    Sweep(sweep::SweepArgs),
    /// Emit the data behind one of the reference figures as CSV.
    Figure(figure::FigureArgs),
    /// Compare a Monte Carlo estimate with the exact information rate.
    Validate(validate::ValidateArgs),
}

impl Command {
    fn out(&self) -> Option<&Path> {
        match self {
            Command::Pie(a) => a.out.as_deref(),
            Command::Sweep(a) => a.out.as_deref(),
            Command::Figure(a) => a.out.as_deref(),
            Command::Validate(a) => a.out.as_deref(),
        }
    }
}

/// Runs a parsed command and returns its rendered output.
pub fn render(command: &Command) -> CliResult<String> {
    match command {
        Command::Pie(args) => pie::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Figure(args) => figure::run(args),
        Command::Validate(args) => validate::run(args),
    }
}

/// Parses the thread cap from the environment value, if any.
pub fn thread_cap(value: Option<&str>) -> CliResult<Option<usize>> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer (got {v:?})"
            ))),
        },
    }
}

/// Renders `cli` on a pool limited to `threads` workers (or rayon's default)
/// and writes the result.
pub fn execute(cli: &Cli, threads: Option<usize>) -> CliResult<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    let output = pool.install(|| render(&cli.command))?;
    write_output(&output, cli.command.out())
}

/// Writes to `path` through a temporary file in the same directory and an
/// atomic rename, or to standard output when no path is given.
pub fn write_output(contents: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(contents.as_bytes())?;
            lock.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
                _ => PathBuf::from("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(contents.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
        }
    }
    Ok(())
}
