use serde::{Deserialize, Serialize};

use crate::calendar::{PartitionScheme, TradingCalendar};
use crate::error::{Error, Result};
use crate::models::ModelKind;

use super::bootstrap::{bootstrap_error_sds, derive_seed};
use super::{ErrorMatrix, StudyConfig};

/// Longest possible trading day.
pub const MAX_DAY_HOURS: usize = 25;

/// MAE and RMSE of every model over the whole out-of-sample range.
pub fn mae_rmse(errors: &ErrorMatrix) -> Vec<(ModelKind, f64, f64)> {
    errors
        .models
        .iter()
        .zip(&errors.errors)
        .map(|(&kind, e)| {
            let (mae, rmse) = mae_rmse_of(e);
            (kind, mae, rmse)
        })
        .collect()
}

fn mae_rmse_of(e: &[f64]) -> (f64, f64) {
    let n = e.len() as f64;
    let mae = e.iter().map(|x| x.abs()).sum::<f64>() / n;
    let rmse = (e.iter().map(|x| x * x).sum::<f64>() / n).sqrt();
    (mae, rmse)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HourlyMetrics {
    pub model: ModelKind,
    /// Position inside the forecast day, 1..=25.
    pub hour: usize,
    /// `#(h)`: forecast days that have an hour `h`.
    pub count: usize,
    /// `None` when `count` is zero.
    pub mae: Option<f64>,
    pub rmse: Option<f64>,
}

/// MAE_h and RMSE_h for every model and every day position `h = 1..=25`.
pub fn hourly_metrics(errors: &ErrorMatrix) -> Vec<HourlyMetrics> {
    let mut out = Vec::with_capacity(errors.models.len() * MAX_DAY_HOURS);
    for (&model, e) in errors.models.iter().zip(&errors.errors) {
        let mut abs = [0.0; MAX_DAY_HOURS];
        let mut sq = [0.0; MAX_DAY_HOURS];
        let mut count = [0usize; MAX_DAY_HOURS];
        for r in &errors.rolls {
            for h in 0..r.hours {
                let x = e[r.offset + h];
                abs[h] += x.abs();
                sq[h] += x * x;
                count[h] += 1;
            }
        }
        for h in 0..MAX_DAY_HOURS {
            let c = count[h];
            let (mae, rmse) = if c == 0 {
                (None, None)
            } else {
                (Some(abs[h] / c as f64), Some((sq[h] / c as f64).sqrt()))
            };
            out.push(HourlyMetrics {
                model,
                hour: h + 1,
                count: c,
                mae,
                rmse,
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionRow {
    pub label: String,
    pub count: usize,
    pub mae: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelPartition {
    pub model: ModelKind,
    pub scheme: String,
    pub rows: Vec<PartitionRow>,
}

/// Mean absolute error per partition label, labels in display order.
/// Labels without any out-of-sample hour are left out.
pub fn partition_mae(
    errors: &ErrorMatrix,
    cal: &TradingCalendar,
    scheme: &PartitionScheme,
) -> Result<Vec<ModelPartition>> {
    scheme.validate()?;
    let labels = scheme.labels();
    let mut group = Vec::with_capacity(errors.len());
    for &t in &errors.hours {
        let label = cal.partition_label(t, scheme)?;
        let idx = labels
            .iter()
            .position(|l| *l == label)
            .ok_or_else(|| Error::Data(format!("unexpected partition label {label}")))?;
        group.push(idx);
    }
    let mut out = Vec::with_capacity(errors.models.len());
    for (&model, e) in errors.models.iter().zip(&errors.errors) {
        let mut sums = vec![0.0; labels.len()];
        let mut counts = vec![0usize; labels.len()];
        for (x, &g) in e.iter().zip(&group) {
            sums[g] += x.abs();
            counts[g] += 1;
        }
        let mut rows = Vec::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if counts[i] == 0 {
                log::warn!("{scheme} partition {label} has no out-of-sample hours; omitted");
                continue;
            }
            rows.push(PartitionRow {
                label: label.clone(),
                count: counts[i],
                mae: sums[i] / counts[i] as f64,
            });
        }
        out.push(ModelPartition {
            model,
            scheme: scheme.name().to_string(),
            rows,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Significance {
    /// Smallest value among the models.
    pub best: bool,
    /// Value within two bootstrap SDs of the best model's value.
    pub within_two_sigma: bool,
}

/// Marks the minimum of `values` and every value `<= best + 2 * sds[best]`.
pub fn significance_flags(values: &[f64], sds: &[f64]) -> Vec<Significance> {
    let Some(best) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
    else {
        return Vec::new();
    };
    let cutoff = values[best] + 2.0 * sds[best];
    values
        .iter()
        .map(|&v| Significance {
            best: v == values[best],
            within_two_sigma: v <= cutoff,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderSummary {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    pub refits: usize,
}

impl OrderSummary {
    fn from_orders(orders: &[Option<usize>]) -> Option<Self> {
        let selected: Vec<usize> = orders.iter().flatten().copied().collect();
        if selected.is_empty() {
            return None;
        }
        Some(Self {
            min: *selected.iter().min()?,
            max: *selected.iter().max()?,
            mean: selected.iter().sum::<usize>() as f64 / selected.len() as f64,
            refits: selected.len(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelMetrics {
    pub model: ModelKind,
    pub mae: f64,
    pub rmse: f64,
    pub mae_sd: f64,
    pub rmse_sd: f64,
    pub mae_flag: Significance,
    pub rmse_flag: Significance,
    /// AIC-selected orders over the refits (autoregressive models only).
    pub orders: Option<OrderSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub market: String,
    pub in_sample_days: usize,
    pub rolls: usize,
    pub refit_stride: usize,
    pub out_of_sample_hours: usize,
    pub bootstrap_replicates: usize,
    pub seed: u64,
    pub models: Vec<ModelMetrics>,
    pub hourly: Vec<HourlyMetrics>,
    pub partitions: Vec<ModelPartition>,
}

impl MetricReport {
    pub fn model(&self, kind: ModelKind) -> Option<&ModelMetrics> {
        self.models.iter().find(|m| m.model == kind)
    }
}

/// All summary metrics of a finished study.
pub fn build_report(
    errors: &ErrorMatrix,
    cal: &TradingCalendar,
    market: &str,
    config: &StudyConfig,
) -> Result<MetricReport> {
    if errors.is_empty() {
        return Err(Error::Data("error matrix is empty".into()));
    }
    let base = mae_rmse(errors);
    // the same resampled hours for every model
    let seed = derive_seed(config.seed, 0x626f_6f74);
    let sds: Vec<(f64, f64)> = errors
        .errors
        .iter()
        .map(|e| bootstrap_error_sds(e, config.bootstrap_replicates, seed))
        .collect();
    let maes: Vec<f64> = base.iter().map(|b| b.1).collect();
    let rmses: Vec<f64> = base.iter().map(|b| b.2).collect();
    let mae_flags = significance_flags(&maes, &sds.iter().map(|s| s.0).collect::<Vec<_>>());
    let rmse_flags = significance_flags(&rmses, &sds.iter().map(|s| s.1).collect::<Vec<_>>());
    let models = base
        .iter()
        .enumerate()
        .map(|(i, &(model, mae, rmse))| ModelMetrics {
            model,
            mae,
            rmse,
            mae_sd: sds[i].0,
            rmse_sd: sds[i].1,
            mae_flag: mae_flags[i],
            rmse_flag: rmse_flags[i],
            orders: OrderSummary::from_orders(&errors.orders[i]),
        })
        .collect();

    let mut partitions = partition_mae(errors, cal, &PartitionScheme::Monthly)?;
    partitions.extend(partition_mae(errors, cal, &PartitionScheme::Daily)?);
    let first = errors.rolls.first().map(|r| r.day).unwrap_or(1);
    let last = errors.rolls.last().map(|r| r.day).unwrap_or(1);
    let annual = PartitionScheme::Annual {
        group_count: config.annual_groups,
        first_day: first,
        last_day: last,
    };
    match annual.validate() {
        Ok(()) => partitions.extend(partition_mae(errors, cal, &annual)?),
        Err(e) => log::warn!("annual partition skipped: {e}"),
    }

    Ok(MetricReport {
        market: market.to_string(),
        in_sample_days: config.in_sample_days,
        rolls: errors.rolls.len(),
        refit_stride: config.refit_stride,
        out_of_sample_hours: errors.len(),
        bootstrap_replicates: config.bootstrap_replicates,
        seed: config.seed,
        models,
        hourly: hourly_metrics(errors),
        partitions,
    })
}
