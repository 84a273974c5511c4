//! Rolling-window out-of-sample study and its summary metrics.
//!
//! Roll `r` (1-based) estimates every model on the `D` days starting at day
//! `first_day + r - 1` and forecasts the following day. The window therefore
//! shifts by `R(r) = Σ_{i<r} H(i)` hours, and the out-of-sample range is the
//! union of the `r_max` forecast days.

mod bootstrap;
mod metrics;
mod report;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calendar::TradingCalendar;
use crate::error::{Error, Result};
use crate::ingest::MarketPair;
use crate::models::{fit, ModelKind, ModelSpec};

pub use bootstrap::{bootstrap_error_sds, bootstrap_sd, derive_seed, BootstrapMetric};
pub use metrics::{
    build_report, hourly_metrics, mae_rmse, partition_mae, significance_flags, HourlyMetrics,
    MetricReport, ModelMetrics, ModelPartition, OrderSummary, PartitionRow, Significance,
    MAX_DAY_HOURS,
};
pub use report::{
    errors_csv, hourly_csv, metrics_csv, parse_errors_csv, partition_csv, report_json,
};

pub const DEFAULT_IN_SAMPLE_DAYS: usize = 730;
pub const DEFAULT_ROLLS: usize = 1825;
pub const DEFAULT_BOOTSTRAP: usize = 1000;
pub const DEFAULT_ANNUAL_GROUPS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    /// `D`: days per estimation window.
    pub in_sample_days: usize,
    /// `r_max`: number of rolls (forecast days).
    pub rolls: usize,
    pub models: Vec<ModelSpec>,
    /// `B`: bootstrap replicates for the metric standard deviations.
    pub bootstrap_replicates: usize,
    pub seed: u64,
    /// Re-estimate every `refit_stride` rolls; in between, the last fit forecasts from the current window.
    pub refit_stride: usize,
    /// Day on which the first window starts.
    pub first_day: usize,
    pub annual_groups: usize,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            in_sample_days: DEFAULT_IN_SAMPLE_DAYS,
            rolls: DEFAULT_ROLLS,
            models: ModelKind::ALL.into_iter().map(ModelSpec::new).collect(),
            bootstrap_replicates: DEFAULT_BOOTSTRAP,
            seed: 0,
            refit_stride: 1,
            first_day: 1,
            annual_groups: DEFAULT_ANNUAL_GROUPS,
        }
    }
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.in_sample_days == 0 {
            return bad("in_sample_days must be at least 1");
        }
        if self.rolls == 0 {
            return bad("rolls must be at least 1");
        }
        if self.bootstrap_replicates == 0 {
            return bad("bootstrap_replicates must be at least 1");
        }
        if self.refit_stride == 0 {
            return bad("refit_stride must be at least 1");
        }
        if self.first_day == 0 {
            return bad("first_day must be at least 1");
        }
        if self.annual_groups == 0 {
            return bad("annual_groups must be at least 1");
        }
        if self.models.is_empty() {
            return bad("at least one model is required");
        }
        for (i, m) in self.models.iter().enumerate() {
            m.validate()?;
            if self.models[..i].iter().any(|o| o.kind == m.kind) {
                return Err(Error::Config(format!("model {} listed twice", m.kind)));
            }
        }
        Ok(())
    }

    /// Days the data must cover: all windows plus the last forecast day.
    pub fn required_days(&self) -> usize {
        self.first_day - 1 + self.in_sample_days + self.rolls
    }
}

/// One forecast day of the study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RollInfo {
    pub roll: usize,
    /// Calendar day index of the forecast day.
    pub day: usize,
    /// Calendar hour index of the day's first hour.
    pub first_hour: usize,
    pub hours: usize,
    /// Offset of the roll's first error in [`ErrorMatrix::hours`].
    pub offset: usize,
}

/// Out-of-sample errors `Y_t - Ŷ_t` of every model at every forecast hour.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorMatrix {
    pub models: Vec<ModelKind>,
    pub rolls: Vec<RollInfo>,
    /// Calendar hour index of each error.
    pub hours: Vec<usize>,
    pub actuals: Vec<f64>,
    /// `errors[m][i]` is model `m`'s error at `hours[i]`.
    pub errors: Vec<Vec<f64>>,
    /// Selected orders per model, one entry per refit.
    pub orders: Vec<Vec<Option<usize>>>,
}

impl ErrorMatrix {
    pub fn len(&self) -> usize {
        self.hours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hours.is_empty()
    }

    pub fn model_index(&self, kind: ModelKind) -> Option<usize> {
        self.models.iter().position(|&k| k == kind)
    }

    pub fn errors_of(&self, kind: ModelKind) -> Option<&[f64]> {
        self.model_index(kind).map(|i| self.errors[i].as_slice())
    }

    /// Position of every error inside its forecast day, starting at 1.
    pub fn hour_positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        for r in &self.rolls {
            out.extend(1..=r.hours);
        }
        out
    }

    /// Errors of `kind` at position `h` of each forecast day that has one, in roll order.
    pub fn errors_at_hour(&self, kind: ModelKind, h: usize) -> Option<Vec<f64>> {
        let e = self.errors_of(kind)?;
        Some(
            self.rolls
                .iter()
                .filter(|r| h >= 1 && h <= r.hours)
                .map(|r| e[r.offset + h - 1])
                .collect(),
        )
    }
}

struct ChunkOutput {
    errors: Vec<f64>,
    order: Option<usize>,
}

/// Runs every model over every roll. Work is spread over the current rayon
/// pool; the result does not depend on the number of threads.
pub fn run_study(pair: &MarketPair, config: &StudyConfig) -> Result<ErrorMatrix> {
    config.validate()?;
    let cal: &Arc<TradingCalendar> = pair.calendar();
    let required = config.required_days();
    let target_days = if pair.target().is_empty() {
        0
    } else {
        cal.day_of_time(pair.target().len())?
    };
    if target_days < required || cal.num_days() < required {
        return Err(Error::InsufficientData {
            required,
            available: target_days.min(cal.num_days()),
        });
    }

    let mut rolls = Vec::with_capacity(config.rolls);
    let mut hours = Vec::new();
    let mut actuals = Vec::new();
    for r in 1..=config.rolls {
        let day = config.first_day - 1 + config.in_sample_days + r;
        let first_hour = cal.day_start(day)?;
        let h = cal.hours_in_day(day)?;
        rolls.push(RollInfo {
            roll: r,
            day,
            first_hour,
            hours: h,
            offset: hours.len(),
        });
        for t in first_hour..first_hour + h {
            hours.push(t);
            actuals.push(pair.target()[t - 1]);
        }
    }

    let stride = config.refit_stride;
    let chunks = config.rolls.div_ceil(stride);
    let jobs: Vec<(usize, usize)> = (0..chunks)
        .flat_map(|c| (0..config.models.len()).map(move |m| (c, m)))
        .collect();
    let outputs: Vec<Result<ChunkOutput>> = jobs
        .par_iter()
        .map(|&(c, m)| {
            let spec = &config.models[m];
            let first_roll = c * stride + 1;
            let last_roll = ((c + 1) * stride).min(config.rolls);
            let window_of = |r: usize| pair.window(config.first_day + r - 1, config.in_sample_days);
            let wrap = |roll: usize, e: Error| Error::Roll {
                model: spec.kind.to_string(),
                roll,
                source: Box::new(e),
            };
            let fitted = window_of(first_roll)
                .and_then(|w| fit(spec, &w))
                .map_err(|e| wrap(first_roll, e))?;
            let mut errors = Vec::new();
            for r in first_roll..=last_roll {
                let info = &rolls[r - 1];
                let forecast = window_of(r)
                    .and_then(|w| fitted.forecast_day(&w))
                    .map_err(|e| wrap(r, e))?;
                let actual = &actuals[info.offset..info.offset + info.hours];
                errors.extend(actual.iter().zip(&forecast.values).map(|(y, f)| y - f));
            }
            Ok(ChunkOutput {
                errors,
                order: fitted.order(),
            })
        })
        .collect();

    let n_models = config.models.len();
    let mut errors = vec![Vec::with_capacity(hours.len()); n_models];
    let mut orders = vec![Vec::with_capacity(chunks); n_models];
    for ((_, m), out) in jobs.iter().zip(outputs) {
        let out = out?;
        errors[*m].extend(out.errors);
        orders[*m].push(out.order);
    }
    Ok(ErrorMatrix {
        models: config.models.iter().map(|s| s.kind).collect(),
        rolls,
        hours,
        actuals,
        errors,
        orders,
    })
}
