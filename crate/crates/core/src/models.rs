//! The six day-ahead forecasters behind one fit/forecast interface.
//!
//! | kind            | uses early prices | default `p_max` |
//! |-----------------|-------------------|-----------------|
//! | `naive`         | no                | -               |
//! | `ar`            | no                | 1400            |
//! | `naive_exaa`    | yes               | -               |
//! | `var2d`         | yes               | 700             |
//! | `var2d_shifted` | yes               | 700             |
//! | `delta_ar`      | yes               | 1400            |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{select_order_aic, select_var_order_aic, ArFit, VarFit};
use crate::ingest::{PairWindow, WEEK_HOURS};

pub const AR_P_MAX: usize = 1400;
pub const VAR_P_MAX: usize = 700;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Same hour one week earlier.
    Naive,
    /// Univariate AR(p) on the target.
    Ar,
    /// The early-settling price of the same hour.
    NaiveExaa,
    /// Bivariate VAR(p) on (early price, target), observed early prices substituted while iterating.
    Var2d,
    /// Bivariate VAR(p) on (next-day early price, target).
    Var2dShifted,
    /// AR(p) on the spread target − early price.
    DeltaAr,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::Naive,
        ModelKind::Ar,
        ModelKind::NaiveExaa,
        ModelKind::Var2d,
        ModelKind::Var2dShifted,
        ModelKind::DeltaAr,
    ];

    /// The models that read the early-settling market.
    pub const EXAA_BASED: [ModelKind; 4] = [
        ModelKind::NaiveExaa,
        ModelKind::Var2d,
        ModelKind::Var2dShifted,
        ModelKind::DeltaAr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Naive => "naive",
            ModelKind::Ar => "ar",
            ModelKind::NaiveExaa => "naive_exaa",
            ModelKind::Var2d => "var2d",
            ModelKind::Var2dShifted => "var2d_shifted",
            ModelKind::DeltaAr => "delta_ar",
        }
    }

    pub fn uses_exaa(self) -> bool {
        !matches!(self, ModelKind::Naive | ModelKind::Ar)
    }

    pub fn default_p_max(self) -> Option<usize> {
        match self {
            ModelKind::Ar | ModelKind::DeltaAr => Some(AR_P_MAX),
            ModelKind::Var2d | ModelKind::Var2dShifted => Some(VAR_P_MAX),
            ModelKind::Naive | ModelKind::NaiveExaa => None,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown model {s:?}")))
    }
}

/// How the spread model iterates its forecast recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaForm {
    /// `Ŷ = E + μ̂ + Σ φ̂_k Δ̂_{n+h-k}`: lagged spreads enter uncentered.
    #[default]
    Uncentered,
    /// `Ŷ = E + μ̂ + Σ φ̂_k (Δ̂_{n+h-k} - μ̂)`, consistent with the fitted AR model.
    Centered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    /// Largest order scanned by AIC; ignored by the two naive models.
    pub p_max: usize,
    #[serde(default)]
    pub delta_form: DeltaForm,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        Self {
            kind,
            p_max: kind.default_p_max().unwrap_or(0),
            delta_form: DeltaForm::default(),
        }
    }

    pub fn with_p_max(mut self, p_max: usize) -> Self {
        self.p_max = p_max;
        self
    }

    pub fn with_delta_form(mut self, form: DeltaForm) -> Self {
        self.delta_form = form;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind.default_p_max().is_some() && self.p_max == 0 {
            return Err(Error::InvalidArgument(format!(
                "{}: p_max must be positive",
                self.kind
            )));
        }
        Ok(())
    }

    /// Shortest in-sample window `fit` accepts.
    pub fn min_window(&self) -> usize {
        match self.kind {
            ModelKind::Naive => WEEK_HOURS,
            ModelKind::NaiveExaa => 1,
            _ => self.p_max + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FittedModel {
    Naive,
    Ar(ArFit),
    NaiveExaa,
    Var2d(VarFit),
    Var2dShifted(VarFit),
    DeltaAr { fit: ArFit, form: DeltaForm },
}

/// Predictions for every hour of one forecast day.
#[derive(Debug, Clone, PartialEq)]
pub struct DayAheadForecast {
    pub values: Vec<f64>,
    pub model: ModelKind,
}

impl FittedModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            FittedModel::Naive => ModelKind::Naive,
            FittedModel::Ar(_) => ModelKind::Ar,
            FittedModel::NaiveExaa => ModelKind::NaiveExaa,
            FittedModel::Var2d(_) => ModelKind::Var2d,
            FittedModel::Var2dShifted(_) => ModelKind::Var2dShifted,
            FittedModel::DeltaAr { .. } => ModelKind::DeltaAr,
        }
    }

    /// AIC-selected order, for the autoregressive kinds.
    pub fn order(&self) -> Option<usize> {
        match self {
            FittedModel::Ar(f) | FittedModel::DeltaAr { fit: f, .. } => Some(f.order),
            FittedModel::Var2d(f) | FittedModel::Var2dShifted(f) => Some(f.order),
            FittedModel::Naive | FittedModel::NaiveExaa => None,
        }
    }

    /// Forecasts the day after `window`'s in-sample range. `window` supplies
    /// the history and that day's early-settling prices.
    pub fn forecast_day(&self, window: &PairWindow<'_>) -> Result<DayAheadForecast> {
        let h = window.forecast_hours();
        let target = window.target();
        let n = target.len();
        let exaa_next = window.exaa_next();
        let values = match self {
            FittedModel::Naive => {
                if n < WEEK_HOURS {
                    return Err(Error::TooShort {
                        required: WEEK_HOURS,
                        available: n,
                    });
                }
                (1..=h).map(|k| target[n + k - 1 - WEEK_HOURS]).collect()
            }
            FittedModel::Ar(fit) => fit.forecast(target, h)?,
            FittedModel::NaiveExaa => exaa_next.to_vec(),
            FittedModel::Var2d(fit) => forecast_var2d(fit, window)?,
            FittedModel::Var2dShifted(fit) => {
                let shifted = window.build_shifted()?;
                forecast_var(fit, &shifted.shifted, h)?
                    .into_iter()
                    .map(|v| v[1])
                    .collect()
            }
            FittedModel::DeltaAr { fit, form } => {
                let spread: Vec<f64> = target
                    .iter()
                    .zip(window.exaa_history())
                    .map(|(y, e)| y - e)
                    .collect();
                let spread_hat = match form {
                    DeltaForm::Centered => fit.forecast(&spread, h)?,
                    DeltaForm::Uncentered => forecast_uncentered(fit, &spread, h)?,
                };
                exaa_next
                    .iter()
                    .zip(spread_hat)
                    .map(|(e, d)| e + d)
                    .collect()
            }
        };
        if values.len() != h || values.iter().any(|v: &f64| !v.is_finite()) {
            return Err(Error::Data(format!(
                "{} produced an invalid forecast",
                self.kind()
            )));
        }
        Ok(DayAheadForecast {
            values,
            model: self.kind(),
        })
    }
}

/// Estimates `spec` on the in-sample part of `window`.
pub fn fit(spec: &ModelSpec, window: &PairWindow<'_>) -> Result<FittedModel> {
    spec.validate()?;
    let n = window.len();
    let required = spec.min_window();
    if n < required {
        return Err(Error::TooShort {
            required,
            available: n,
        });
    }
    let target = window.target();
    Ok(match spec.kind {
        ModelKind::Naive => FittedModel::Naive,
        ModelKind::NaiveExaa => FittedModel::NaiveExaa,
        ModelKind::Ar => FittedModel::Ar(select_order_aic(target, spec.p_max)?),
        ModelKind::Var2d => {
            let pairs: Vec<[f64; 2]> = window
                .exaa_history()
                .iter()
                .zip(target)
                .map(|(e, y)| [*e, *y])
                .collect();
            FittedModel::Var2d(select_var_order_aic(&pairs, spec.p_max)?)
        }
        ModelKind::Var2dShifted => {
            let shifted = window.build_shifted()?;
            FittedModel::Var2dShifted(select_var_order_aic(&shifted.shifted, spec.p_max)?)
        }
        ModelKind::DeltaAr => {
            let spread: Vec<f64> = target
                .iter()
                .zip(window.exaa_history())
                .map(|(y, e)| y - e)
                .collect();
            FittedModel::DeltaAr {
                fit: select_order_aic(&spread, spec.p_max)?,
                form: spec.delta_form,
            }
        }
    })
}

fn forecast_uncentered(fit: &ArFit, history: &[f64], horizon: usize) -> Result<Vec<f64>> {
    let p = fit.order;
    if history.len() < p {
        return Err(Error::TooShort {
            required: p,
            available: history.len(),
        });
    }
    let mut values: Vec<f64> = history[history.len() - p..].to_vec();
    let mut out = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        let next = fit.mean
            + fit
                .coefficients
                .iter()
                .zip(values.iter().rev())
                .map(|(phi, d)| phi * d)
                .sum::<f64>();
        out.push(next);
        values.push(next);
    }
    Ok(out)
}

fn var_deviation(fit: &VarFit, lagged: &[[f64; 2]]) -> [f64; 2] {
    // lagged is in time order; Φ_1 pairs with the newest vector
    let mut acc = [0.0; 2];
    for (phi, d) in fit.coefficients.iter().zip(lagged.iter().rev()) {
        acc[0] += phi[(0, 0)] * d[0] + phi[(0, 1)] * d[1];
        acc[1] += phi[(1, 0)] * d[0] + phi[(1, 1)] * d[1];
    }
    acc
}

fn centered_tail(fit: &VarFit, history: &[[f64; 2]]) -> Result<Vec<[f64; 2]>> {
    let p = fit.order;
    if history.len() < p {
        return Err(Error::TooShort {
            required: p,
            available: history.len(),
        });
    }
    Ok(history[history.len() - p..]
        .iter()
        .map(|v| [v[0] - fit.mean[0], v[1] - fit.mean[1]])
        .collect())
}

/// Iterates both VAR equations `horizon` steps.
fn forecast_var(fit: &VarFit, history: &[[f64; 2]], horizon: usize) -> Result<Vec<[f64; 2]>> {
    let mut lagged = centered_tail(fit, history)?;
    let mut out = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        let dev = var_deviation(fit, &lagged);
        out.push([fit.mean[0] + dev[0], fit.mean[1] + dev[1]]);
        lagged.push(dev);
    }
    Ok(out)
}

/// Iterates only the target equation; lagged early-price components after the
/// in-sample end take their observed values.
fn forecast_var2d(fit: &VarFit, window: &PairWindow<'_>) -> Result<Vec<f64>> {
    let history: Vec<[f64; 2]> = window
        .exaa_history()
        .iter()
        .zip(window.target())
        .map(|(e, y)| [*e, *y])
        .collect();
    let mut lagged = centered_tail(fit, &history)?;
    let mut out = Vec::with_capacity(window.forecast_hours());
    for e in window.exaa_next() {
        let dev = var_deviation(fit, &lagged);
        out.push(fit.mean[1] + dev[1]);
        lagged.push([e - fit.mean[0], dev[1]]);
    }
    Ok(out)
}
