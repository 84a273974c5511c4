use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use chrono::{SecondsFormat, Utc};

use crate::backtest::{
    build_report, errors_csv, hourly_csv, metrics_csv, parse_errors_csv, partition_csv,
    report_json, run_study,
};
use crate::calendar::TradingCalendar;
use crate::dm::{dm_by_hour, dm_csv};
use crate::error::{Error, Result};
use crate::ingest::{convert_currency, impute_weekly, load_prices, read_fx, MarketPair};
use crate::synth::generate;

use super::config::RunConfig;
use super::manifest::{sha256_hex, FileDigest, RunManifest};

/// File name of the manifest written by `command`.
pub fn manifest_name(command: &str) -> String {
    format!("manifest_{command}.json")
}

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub config: PathBuf,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub force: bool,
    /// Worker threads; `None` uses one per core.
    pub jobs: Option<usize>,
}

impl RunOptions {
    pub fn new(config: impl Into<PathBuf>, out: impl Into<PathBuf>) -> Self {
        Self {
            config: config.into(),
            out: out.into(),
            seed: None,
            force: false,
            jobs: None,
        }
    }
}

struct Run {
    command: &'static str,
    started: Instant,
    started_at: String,
    config: RunConfig,
    config_digest: FileDigest,
}

impl Run {
    fn start(command: &'static str, opts: &RunOptions) -> Result<Self> {
        let started_at = now();
        let config_digest = FileDigest::of_file(&opts.config)?;
        let config = RunConfig::load(&opts.config)?;
        Ok(Self {
            command,
            started: Instant::now(),
            started_at,
            config,
            config_digest,
        })
    }

    /// Writes `files` and the manifest into the output directory. On any
    /// failure every file written by this call is removed again.
    fn finish(
        self,
        opts: &RunOptions,
        seed: u64,
        inputs: Vec<PathBuf>,
        files: Vec<(&'static str, String)>,
    ) -> Result<RunManifest> {
        let inputs = inputs
            .iter()
            .map(|p| FileDigest::of_file(p))
            .collect::<Result<Vec<_>>>()?;
        let mut written: Vec<PathBuf> = Vec::new();
        let result = (|| {
            let mut outputs = Vec::with_capacity(files.len());
            for (name, contents) in &files {
                let path = opts.out.join(name);
                written.push(path.clone());
                write_verified(&path, contents.as_bytes())?;
                outputs.push(FileDigest {
                    path: PathBuf::from(name),
                    sha256: sha256_hex(contents.as_bytes()),
                });
            }
            let manifest = RunManifest {
                tool: env!("CARGO_PKG_NAME").to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                command: self.command.to_string(),
                seed,
                jobs: rayon::current_num_threads(),
                config: self.config_digest.clone(),
                inputs,
                outputs,
                started_at: self.started_at.clone(),
                finished_at: now(),
                wall_seconds: self.started.elapsed().as_secs_f64(),
            };
            let text = serde_json::to_string_pretty(&manifest)? + "\n";
            let path = opts.out.join(manifest_name(self.command));
            written.push(path.clone());
            write_verified(&path, text.as_bytes())?;
            Ok(manifest)
        })();
        if result.is_err() {
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
        }
        result
    }
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

fn write_verified(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))?;
    let back = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    if back != bytes {
        return Err(Error::Data(format!(
            "{} did not read back intact",
            path.display()
        )));
    }
    Ok(())
}

/// Creates the output directory and refuses to overwrite unless forced.
fn prepare_out_dir(opts: &RunOptions, command: &str, names: &[&str]) -> Result<()> {
    std::fs::create_dir_all(&opts.out).map_err(|e| Error::io(&opts.out, e))?;
    if !opts.force {
        let manifest = manifest_name(command);
        for name in names
            .iter()
            .copied()
            .chain(std::iter::once(manifest.as_str()))
        {
            let path = opts.out.join(name);
            if path.exists() {
                return Err(Error::OutputExists(path));
            }
        }
    }
    Ok(())
}

const SYNTH_OUTPUTS: [&str; 3] = ["calendar.csv", "exaa.csv", "target.csv"];

/// Generates a synthetic market pair from the `[synth]` section.
pub fn cmd_synth(opts: &RunOptions) -> Result<RunManifest> {
    let run = Run::start("synth", opts)?;
    let mut cfg = run.config.synth()?.clone();
    cfg.seed = run.config.seed(opts.seed, cfg.seed);
    cfg.validate()?;
    prepare_out_dir(opts, "synth", &SYNTH_OUTPUTS)?;
    let out = generate(&cfg)?;
    log::info!(
        "generated {} days ({} hours)",
        out.exaa.calendar.num_days(),
        out.exaa.len()
    );
    let files = vec![
        (SYNTH_OUTPUTS[0], out.exaa.calendar.to_csv_string()),
        (SYNTH_OUTPUTS[1], out.exaa.to_csv_string()),
        (SYNTH_OUTPUTS[2], out.target.to_csv_string()),
    ];
    let seed = cfg.seed;
    run.finish(opts, seed, Vec::new(), files)
}

/// Reads the `[data]` files into an aligned market pair.
pub fn load_market_pair(cfg: &RunConfig) -> Result<(MarketPair, Vec<PathBuf>)> {
    let data = cfg.data()?;
    let cal_path = cfg.resolve(&data.calendar);
    let exaa_path = cfg.resolve(&data.exaa);
    let target_path = cfg.resolve(&data.target);
    let calendar = Arc::new(TradingCalendar::read(&cal_path)?);
    let exaa = impute_weekly(&load_prices(
        &exaa_path,
        &data.exaa_id,
        Arc::clone(&calendar),
    )?)?;
    let mut target = impute_weekly(&load_prices(
        &target_path,
        &data.market,
        Arc::clone(&calendar),
    )?)?;
    let mut inputs = vec![cal_path, exaa_path, target_path];
    if let Some(fx) = &data.target_fx {
        let fx_path = cfg.resolve(fx);
        let rates = read_fx(&fx_path, &calendar)?;
        target = convert_currency(&target, &rates)?;
        inputs.push(fx_path);
    }
    Ok((MarketPair::new(exaa, target)?, inputs))
}

const BACKTEST_OUTPUTS: [&str; 7] = [
    "report.json",
    "metrics.csv",
    "hourly.csv",
    "partition_monthly.csv",
    "partition_daily.csv",
    "partition_annual.csv",
    "errors.csv",
];

/// Runs the rolling study on the `[data]` files and writes all reports.
pub fn cmd_backtest(opts: &RunOptions) -> Result<RunManifest> {
    let run = Run::start("backtest", opts)?;
    let seed = run.config.seed(opts.seed, 0);
    let study = run.config.study.to_study_config(seed)?;
    let names = &BACKTEST_OUTPUTS;
    prepare_out_dir(opts, "backtest", names)?;
    let (pair, inputs) = load_market_pair(&run.config)?;
    let market = run.config.data()?.market.clone();
    log::info!(
        "backtest on {market}: {} models, {} rolls of {} days",
        study.models.len(),
        study.rolls,
        study.in_sample_days
    );
    let errors = run_study(&pair, &study)?;
    let report = build_report(&errors, pair.calendar(), &market, &study)?;
    for m in &report.models {
        log::info!(
            "{:>14}  MAE {:.3} ({:.3})  RMSE {:.3} ({:.3})",
            m.model.name(),
            m.mae,
            m.mae_sd,
            m.rmse,
            m.rmse_sd
        );
    }
    let files = vec![
        (names[0], report_json(&report)?),
        (names[1], metrics_csv(&report)),
        (names[2], hourly_csv(&report)),
        (names[3], partition_csv(&report, "monthly")),
        (names[4], partition_csv(&report, "daily")),
        (names[5], partition_csv(&report, "annual")),
        (names[6], errors_csv(&errors, pair.calendar())?),
    ];
    run.finish(opts, seed, inputs, files)
}

const DM_OUTPUT: &str = "dm.csv";

/// Per-hour DM tests of each configured model against the baseline.
pub fn cmd_dm(opts: &RunOptions) -> Result<RunManifest> {
    let run = Run::start("dm", opts)?;
    let seed = run.config.seed(opts.seed, 0);
    let section = &run.config.dm;
    let cfg = section.to_dm_config()?;
    let errors_path = match &section.errors {
        Some(p) => run.config.resolve(p),
        None => opts.out.join("errors.csv"),
    };
    if !errors_path.is_file() {
        return Err(Error::Data(format!(
            "error export {} not found; run `backtest` first",
            errors_path.display()
        )));
    }
    prepare_out_dir(opts, "dm", &[DM_OUTPUT])?;
    let text = std::fs::read_to_string(&errors_path).map_err(|e| Error::io(&errors_path, e))?;
    let errors = parse_errors_csv(&text).map_err(|e| match e {
        Error::Parse { line, message, .. } => Error::Parse {
            path: errors_path.clone(),
            line,
            message,
        },
        other => other,
    })?;
    let market = run.config.market();
    let comparisons = section
        .compare
        .iter()
        .map(|&m| dm_by_hour(&errors, &market, section.baseline, m, &cfg))
        .collect::<Result<Vec<_>>>()?;
    for c in &comparisons {
        let sig = c.hours.iter().filter(|h| h.entry.significant).count();
        log::info!(
            "{}: significant in {sig} of {} hours",
            c.pair_label(),
            c.hours.len()
        );
    }
    run.finish(
        opts,
        seed,
        vec![errors_path],
        vec![(DM_OUTPUT, dm_csv(&comparisons))],
    )
}
