//! Synthetic coupled markets with a known structure.
//!
//! The early-settling price is `base + seasonal_t + x_t` with `x_t` an AR
//! process; the target adds an AR(1) spread and idiosyncratic noise:
//! `target_t = exaa_t + spread_mean + s_t + η_t`.

use std::f64::consts::PI;
use std::sync::Arc;

use chrono::{Datelike, NaiveDate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{StandardNormal, StudentT};
use serde::{Deserialize, Serialize};

use crate::calendar::TradingCalendar;
use crate::error::{Error, Result};
use crate::estimation::coefficients_are_stationary;
use crate::ingest::{HourlySeries, MarketPair};

const BURN_IN: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DstDay {
    /// 1-based day index.
    pub day: usize,
    pub hours: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SynthConfig {
    pub start_date: NaiveDate,
    pub days: usize,
    pub base_level: f64,
    /// Amplitude of the intraday profile (EUR/MWh).
    pub daily_amplitude: f64,
    /// Amplitude of the day-of-week profile (EUR/MWh).
    pub weekly_amplitude: f64,
    pub exaa_ar: Vec<f64>,
    pub exaa_noise: f64,
    pub spread_mean: f64,
    pub spread_ar: f64,
    pub spread_noise: f64,
    pub idio_noise: f64,
    /// Student-t innovations with these degrees of freedom (> 2), scaled to unit variance.
    pub heavy_tail_df: Option<f64>,
    /// Apply the EU clock-change rule to the calendar.
    pub eu_clock_changes: bool,
    /// Explicit 23/25-hour days; applied after `eu_clock_changes`.
    pub dst_days: Vec<DstDay>,
    pub exaa_id: String,
    pub target_id: String,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            start_date: NaiveDate::from_ymd_opt(2012, 1, 1).expect("valid date"),
            days: 30,
            base_level: 40.0,
            daily_amplitude: 10.0,
            weekly_amplitude: 5.0,
            exaa_ar: vec![0.9],
            exaa_noise: 3.0,
            spread_mean: 0.0,
            spread_ar: 0.5,
            spread_noise: 1.0,
            idio_noise: 0.5,
            heavy_tail_df: None,
            eu_clock_changes: false,
            dst_days: Vec::new(),
            exaa_id: "EXAA".into(),
            target_id: "TARGET".into(),
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, why: String| Err(Error::Config(format!("{field}: {why}")));
        if self.days == 0 {
            return bad("days", "must be at least 1".into());
        }
        if !coefficients_are_stationary(&self.exaa_ar) {
            return bad(
                "exaa_ar",
                format!("coefficients {:?} are not stationary", self.exaa_ar),
            );
        }
        if self.spread_ar.is_nan() || self.spread_ar.abs() >= 1.0 {
            return bad(
                "spread_ar",
                format!("coefficient {} is not stationary", self.spread_ar),
            );
        }
        for (field, v) in [
            ("exaa_noise", self.exaa_noise),
            ("spread_noise", self.spread_noise),
            ("idio_noise", self.idio_noise),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(field, format!("noise scale {v} must be finite and >= 0"));
            }
        }
        for (field, v) in [
            ("base_level", self.base_level),
            ("daily_amplitude", self.daily_amplitude),
            ("weekly_amplitude", self.weekly_amplitude),
            ("spread_mean", self.spread_mean),
        ] {
            if !v.is_finite() {
                return bad(field, "must be finite".into());
            }
        }
        if let Some(df) = self.heavy_tail_df {
            if df.is_nan() || df <= 2.0 {
                return bad("heavy_tail_df", format!("{df} must exceed 2"));
            }
        }
        for d in &self.dst_days {
            if d.day == 0 || d.day > self.days || !(23..=25).contains(&d.hours) {
                return bad("dst_days", format!("invalid entry {d:?}"));
            }
        }
        Ok(())
    }

    pub fn calendar(&self) -> Result<TradingCalendar> {
        let base = if self.eu_clock_changes {
            TradingCalendar::with_eu_clock_changes(self.start_date, self.days)?
        } else {
            TradingCalendar::uniform(self.start_date, self.days)?
        };
        let mut lengths = base.day_lengths().to_vec();
        for d in &self.dst_days {
            lengths[d.day - 1] = d.hours;
        }
        TradingCalendar::new(self.start_date, lengths)
    }
}

/// Generated markets plus the components they were built from.
#[derive(Debug, Clone)]
pub struct SynthOutput {
    pub pair: MarketPair,
    pub exaa: HourlySeries,
    pub target: HourlySeries,
    pub seasonal: Vec<f64>,
    /// The spread `target - exaa` without the idiosyncratic noise.
    pub spread: Vec<f64>,
}

enum Innovations {
    Gaussian,
    StudentT { dist: StudentT<f64>, scale: f64 },
}

impl Innovations {
    fn new(df: Option<f64>) -> Result<Self> {
        Ok(match df {
            None => Innovations::Gaussian,
            Some(df) => Innovations::StudentT {
                dist: StudentT::new(df)
                    .map_err(|e| Error::Config(format!("heavy_tail_df: {e}")))?,
                scale: ((df - 2.0) / df).sqrt(),
            },
        })
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Innovations::Gaussian => rng.sample(StandardNormal),
            Innovations::StudentT { dist, scale } => rng.sample(dist) * scale,
        }
    }
}

/// Intraday profile peaking around midday, plus a day-of-week profile with cheaper weekends.
fn seasonal_profile(cfg: &SynthConfig, date: NaiveDate, slot: usize) -> f64 {
    let daily = -cfg.daily_amplitude * (2.0 * PI * slot as f64 / 24.0).cos();
    let dow = date.weekday().num_days_from_monday() as f64;
    let weekly = cfg.weekly_amplitude * (2.0 * PI * (dow - 2.0) / 7.0).cos();
    daily + weekly
}

pub fn generate(cfg: &SynthConfig) -> Result<SynthOutput> {
    cfg.validate()?;
    let calendar = Arc::new(cfg.calendar()?);
    let n = calendar.total_hours();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let innov = Innovations::new(cfg.heavy_tail_df)?;

    let mut seasonal = Vec::with_capacity(n);
    for day in 1..=calendar.num_days() {
        let date = calendar.date_of_day(day)?;
        for slot in 0..calendar.hours_in_day(day)? {
            seasonal.push(seasonal_profile(cfg, date, slot));
        }
    }

    let p = cfg.exaa_ar.len();
    let mut x = vec![0.0; p];
    let mut s = 0.0;
    let mut exaa = Vec::with_capacity(n);
    let mut target = Vec::with_capacity(n);
    let mut spread = Vec::with_capacity(n);
    for t in 0..BURN_IN + n {
        let ar: f64 = cfg
            .exaa_ar
            .iter()
            .zip(x.iter().rev())
            .map(|(phi, v)| phi * v)
            .sum();
        let xt = ar + cfg.exaa_noise * innov.draw(&mut rng);
        if p > 0 {
            x.remove(0);
            x.push(xt);
        }
        s = cfg.spread_ar * s + cfg.spread_noise * innov.draw(&mut rng);
        let eta = cfg.idio_noise * innov.draw(&mut rng);
        if t >= BURN_IN {
            let i = t - BURN_IN;
            let e = cfg.base_level + seasonal[i] + xt;
            let sp = cfg.spread_mean + s;
            exaa.push(e);
            spread.push(sp);
            target.push(e + sp + eta);
        }
    }

    let exaa = HourlySeries::new(Arc::clone(&calendar), exaa, cfg.exaa_id.clone())?;
    let target = HourlySeries::new(Arc::clone(&calendar), target, cfg.target_id.clone())?;
    let pair = MarketPair::new(exaa.clone(), target.clone())?;
    Ok(SynthOutput {
        pair,
        exaa,
        target,
        seasonal,
        spread,
    })
}
