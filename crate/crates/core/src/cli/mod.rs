//! Batch command-line front end: `synth`, `backtest` and `dm`.

mod commands;
pub mod config;
pub mod manifest;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};

pub use commands::{cmd_backtest, cmd_dm, cmd_synth, load_market_pair, manifest_name, RunOptions};
pub use config::{DataSection, DmSection, RunConfig, StudySection};
pub use manifest::{sha256_hex, FileDigest, RunManifest};

#[derive(Debug, Parser)]
#[command(
    name = "dayahead",
    version,
    about = "Day-ahead price forecasting backtests"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Master seed; overrides the config file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Overwrite existing outputs.
    #[arg(long, global = true)]
    pub force: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic market pair from the `[synth]` section.
    Synth { config: PathBuf },
    /// Run the rolling-window study on the `[data]` files.
    Backtest { config: PathBuf },
    /// Diebold-Mariano tests on a previous backtest's `errors.csv`.
    Dm { config: PathBuf },
}

impl Cli {
    pub fn options(&self) -> RunOptions {
        let config = match &self.command {
            Command::Synth { config } | Command::Backtest { config } | Command::Dm { config } => {
                config.clone()
            }
        };
        RunOptions {
            config,
            out: self.out.clone(),
            seed: self.seed,
            force: self.force,
            jobs: self.jobs,
        }
    }
}

/// Runs `f` on a pool with `jobs` threads, or on the global pool.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Config("--jobs must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

pub fn run(cli: &Cli) -> Result<RunManifest> {
    let opts = cli.options();
    with_jobs(opts.jobs, || match cli.command {
        Command::Synth { .. } => cmd_synth(&opts),
        Command::Backtest { .. } => cmd_backtest(&opts),
        Command::Dm { .. } => cmd_dm(&opts),
    })?
}
