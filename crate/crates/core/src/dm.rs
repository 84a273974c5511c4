//! Per-hour Diebold-Mariano comparison of two models' forecast errors.
//!
//! The loss differential `δ_t = |e1_t|^p - |e2_t|^p` is modelled as an AR(q)
//! chosen by AIC; its long-run variance is the AR spectral density at
//! frequency zero, `σ² / (1 - Σφ)²`. Positive statistics favour the second
//! model.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::backtest::ErrorMatrix;
use crate::error::{Error, Result};
use crate::estimation::select_order_aic;
use crate::models::ModelKind;

/// One-sided 95% standard normal quantile.
pub const ONE_SIDED_95: f64 = 1.645;
/// Day positions tested; the rare 25th hour is left out.
pub const DM_HOURS: std::ops::RangeInclusive<usize> = 1..=24;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmConfig {
    /// Largest AR order tried for the loss differential.
    pub q_max: usize,
    /// Shortest loss-differential series that is tested.
    pub min_length: usize,
    /// Loss power `p`.
    pub power: f64,
}

impl Default for DmConfig {
    fn default() -> Self {
        Self {
            q_max: 21,
            min_length: 30,
            power: 1.0,
        }
    }
}

impl DmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_length < 2 {
            return Err(Error::Config("dm.min_length must be at least 2".into()));
        }
        if !(self.power.is_finite() && self.power > 0.0) {
            return Err(Error::Config(format!(
                "dm.power {} must be positive",
                self.power
            )));
        }
        Ok(())
    }
}

/// `|e1|^p - |e2|^p` elementwise.
pub fn loss_differential(e1: &[f64], e2: &[f64], p: f64) -> Result<Vec<f64>> {
    if e1.len() != e2.len() {
        return Err(Error::InvalidArgument(format!(
            "error series lengths differ: {} vs {}",
            e1.len(),
            e2.len()
        )));
    }
    Ok(e1
        .iter()
        .zip(e2)
        .map(|(a, b)| a.abs().powf(p) - b.abs().powf(p))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmEntry {
    pub statistic: f64,
    pub long_run_variance: f64,
    /// AR order selected for the loss differential.
    pub order: usize,
    pub threshold: f64,
    pub significant: bool,
    /// Constant loss differential; the statistic is reported as 0.
    pub degenerate: bool,
    pub mean: f64,
    pub length: usize,
}

impl DmEntry {
    fn degenerate(mean: f64, length: usize) -> Self {
        Self {
            statistic: 0.0,
            long_run_variance: 0.0,
            order: 0,
            threshold: ONE_SIDED_95,
            significant: false,
            degenerate: true,
            mean,
            length,
        }
    }
}

pub fn dm_statistic(delta: &[f64], cfg: &DmConfig) -> Result<DmEntry> {
    let m = delta.len();
    if m < cfg.min_length.max(2) {
        return Err(Error::TooShort {
            required: cfg.min_length.max(2),
            available: m,
        });
    }
    let mean = delta.iter().sum::<f64>() / m as f64;
    if delta.iter().all(|&d| d == delta[0]) {
        return Ok(DmEntry::degenerate(mean, m));
    }
    let fit = match select_order_aic(delta, cfg.q_max.min(m - 1)) {
        Ok(fit) => fit,
        Err(Error::ConstantSeries | Error::NonPositiveVariance { .. }) => {
            return Ok(DmEntry::degenerate(mean, m));
        }
        Err(e) => return Err(e),
    };
    let denom = 1.0 - fit.coefficient_sum();
    let lrv = fit.sigma2 / (denom * denom);
    if !(lrv.is_finite() && lrv > 0.0) {
        return Ok(DmEntry::degenerate(mean, m));
    }
    let statistic = mean / (lrv / m as f64).sqrt();
    Ok(DmEntry {
        statistic,
        long_run_variance: lrv,
        order: fit.order,
        threshold: ONE_SIDED_95,
        significant: statistic > ONE_SIDED_95,
        degenerate: false,
        mean,
        length: m,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmHourResult {
    pub hour: usize,
    pub entry: DmEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmComparison {
    pub market: String,
    /// Model whose losses enter with a positive sign.
    pub first: ModelKind,
    pub second: ModelKind,
    pub hours: Vec<DmHourResult>,
}

impl DmComparison {
    pub fn pair_label(&self) -> String {
        format!("{}_vs_{}", self.first, self.second)
    }
}

/// DM statistics of `first` against `second` for every hour `1..=24`.
pub fn dm_by_hour(
    errors: &ErrorMatrix,
    market: &str,
    first: ModelKind,
    second: ModelKind,
    cfg: &DmConfig,
) -> Result<DmComparison> {
    cfg.validate()?;
    let missing = |k: ModelKind| Error::Data(format!("model {k} is not in the error export"));
    errors.model_index(first).ok_or_else(|| missing(first))?;
    errors.model_index(second).ok_or_else(|| missing(second))?;
    let mut hours = Vec::with_capacity(24);
    for h in DM_HOURS {
        let e1 = errors
            .errors_at_hour(first, h)
            .ok_or_else(|| missing(first))?;
        let e2 = errors
            .errors_at_hour(second, h)
            .ok_or_else(|| missing(second))?;
        let delta = loss_differential(&e1, &e2, cfg.power)?;
        hours.push(DmHourResult {
            hour: h,
            entry: dm_statistic(&delta, cfg)?,
        });
    }
    Ok(DmComparison {
        market: market.to_string(),
        first,
        second,
        hours,
    })
}

pub fn dm_csv(comparisons: &[DmComparison]) -> String {
    let mut out =
        String::from("market,model_pair,hour,statistic,q,threshold,significant,degenerate\n");
    for c in comparisons {
        let label = c.pair_label();
        for r in &c.hours {
            let e = &r.entry;
            let _ = writeln!(
                out,
                "{},{label},{},{},{},{},{},{}",
                c.market, r.hour, e.statistic, e.order, e.threshold, e.significant, e.degenerate
            );
        }
    }
    out
}
