//! Price file loading, weekly imputation, currency conversion and the
//! alignment of the early-settling market with a target market.
//!
//! Price files are UTF-8 CSV with a header row and `timestamp_local,price`
//! rows, timestamps formatted `YYYY-MM-DD HH:MM` (a `T` separator and
//! trailing seconds are accepted). Local clock hours map to calendar slots
//! with the EU clock change at 02:00: on a 23-hour day hour 02 does not
//! exist, on a 25-hour day hour 02 appears twice and the two rows fill
//! slots 3 and 4 in file order.

use std::path::Path;
use std::sync::Arc;

use chrono::{NaiveDateTime, Timelike};

use crate::calendar::TradingCalendar;
use crate::error::{Error, Result};

/// Local clock hour that is skipped (23-hour day) or repeated (25-hour day).
pub const CLOCK_CHANGE_HOUR: usize = 2;

/// Hours between an observation and its weekly counterpart.
pub const WEEK_HOURS: usize = 168;

/// Hourly prices straight from a file; absent or unparseable slots are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct RawHourlySeries {
    pub calendar: Arc<TradingCalendar>,
    pub values: Vec<Option<f64>>,
    pub market_id: String,
}

impl RawHourlySeries {
    pub fn missing_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

/// Complete hourly prices in EUR/MWh, one per calendar hour.
#[derive(Debug, Clone, PartialEq)]
pub struct HourlySeries {
    pub calendar: Arc<TradingCalendar>,
    pub values: Vec<f64>,
    pub market_id: String,
}

impl HourlySeries {
    pub fn new(
        calendar: Arc<TradingCalendar>,
        values: Vec<f64>,
        market_id: impl Into<String>,
    ) -> Result<Self> {
        if values.len() != calendar.total_hours() {
            return Err(Error::Data(format!(
                "series has {} values but calendar has {} hours",
                values.len(),
                calendar.total_hours()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!("non-finite price at hour {}", i + 1)));
        }
        Ok(Self {
            calendar,
            values,
            market_id: market_id.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_raw(&self) -> RawHourlySeries {
        RawHourlySeries {
            calendar: Arc::clone(&self.calendar),
            values: self.values.iter().copied().map(Some).collect(),
            market_id: self.market_id.clone(),
        }
    }

    /// Serializes in the same CSV format [`load_prices`] reads.
    pub fn to_csv_string(&self) -> String {
        let cal = &self.calendar;
        let mut out = String::with_capacity(self.values.len() * 24);
        out.push_str("timestamp_local,price\n");
        let mut t = 0;
        for day in 1..=cal.num_days() {
            let date = cal.date_of_day(day).expect("day in range");
            let h = cal.hours_in_day(day).expect("day in range");
            for slot in 1..=h {
                let clock = clock_hour_of_slot(h, slot);
                out.push_str(&format!(
                    "{} {:02}:00,{}\n",
                    date.format("%Y-%m-%d"),
                    clock,
                    self.values[t]
                ));
                t += 1;
            }
        }
        out
    }
}

fn clock_hour_of_slot(day_hours: usize, slot: usize) -> usize {
    let c = CLOCK_CHANGE_HOUR;
    match day_hours {
        23 if slot > c => slot,
        25 if slot == c + 2 => c,
        25 if slot > c + 2 => slot - 2,
        _ => slot - 1,
    }
}

/// Slot (1-based) of a local clock hour on a day with `day_hours` hours.
/// `repeat` is true for the second occurrence of the repeated hour.
fn slot_of_clock_hour(day_hours: usize, clock: usize, repeat: bool) -> Option<usize> {
    let c = CLOCK_CHANGE_HOUR;
    match day_hours {
        24 if clock < 24 && !repeat => Some(clock + 1),
        23 if clock == c || clock >= 24 || repeat => None,
        23 if clock < c => Some(clock + 1),
        23 => Some(clock),
        25 if clock == c => Some(if repeat { c + 2 } else { c + 1 }),
        25 if repeat || clock >= 24 => None,
        25 if clock < c => Some(clock + 1),
        25 => Some(clock + 2),
        _ => None,
    }
}

fn parse_timestamp(s: &str) -> Option<NaiveDateTime> {
    const FORMATS: [&str; 4] = [
        "%Y-%m-%d %H:%M",
        "%Y-%m-%dT%H:%M",
        "%Y-%m-%d %H:%M:%S",
        "%Y-%m-%dT%H:%M:%S",
    ];
    FORMATS
        .iter()
        .find_map(|f| NaiveDateTime::parse_from_str(s, f).ok())
}

fn parse_price(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Loads a `timestamp_local,price` CSV into calendar slots.
pub fn load_prices(
    path: &Path,
    market_id: &str,
    calendar: Arc<TradingCalendar>,
) -> Result<RawHourlySeries> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_prices(&text, path, market_id, calendar)
}

pub fn parse_prices(
    text: &str,
    path: &Path,
    market_id: &str,
    calendar: Arc<TradingCalendar>,
) -> Result<RawHourlySeries> {
    let mut values: Vec<Option<f64>> = vec![None; calendar.total_hours()];
    let mut filled = vec![false; calendar.total_hours()];
    let mut lines = text.lines().enumerate();
    if lines.next().is_none() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: "empty file (header row expected)".into(),
        });
    }
    for (i, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        let mut fields = line.split(',');
        let (ts, price) = match (fields.next(), fields.next(), fields.next()) {
            (Some(ts), Some(price), None) => (ts.trim(), price),
            _ => return Err(err("expected two fields `timestamp_local,price`".into())),
        };
        let stamp = parse_timestamp(ts).ok_or_else(|| err(format!("bad timestamp {ts:?}")))?;
        if stamp.minute() != 0 || stamp.second() != 0 {
            return Err(err(format!("timestamp {ts:?} is not on the hour")));
        }
        let day = calendar
            .day_of_date(stamp.date())
            .ok_or_else(|| err(format!("date {} outside the calendar", stamp.date())))?;
        let h = calendar.hours_in_day(day)?;
        let start = calendar.day_start(day)? - 1;
        let clock = stamp.hour() as usize;
        let first_slot = slot_of_clock_hour(h, clock, false)
            .ok_or_else(|| err(format!("hour {clock:02} does not exist on a {h}-hour day")))?;
        let mut idx = start + first_slot - 1;
        if filled[idx] {
            let second = slot_of_clock_hour(h, clock, true)
                .ok_or_else(|| err(format!("duplicate row for {ts}")))?;
            idx = start + second - 1;
            if filled[idx] {
                return Err(err(format!("duplicate row for {ts}")));
            }
        }
        filled[idx] = true;
        values[idx] = parse_price(price);
    }
    let series = RawHourlySeries {
        calendar,
        values,
        market_id: market_id.to_string(),
    };
    let missing = series.missing_count();
    if missing > 0 {
        log::warn!(
            "{}: {} of {} hours missing",
            path.display(),
            missing,
            series.values.len()
        );
    }
    Ok(series)
}

/// Fills every missing hour with the value one week (168 hours) earlier,
/// in increasing hour order so runs of missing weeks resolve forward.
pub fn impute_weekly(series: &RawHourlySeries) -> Result<HourlySeries> {
    let mut out = Vec::with_capacity(series.values.len());
    for (i, v) in series.values.iter().enumerate() {
        let value = match v {
            Some(x) => *x,
            None if i >= WEEK_HOURS => out[i - WEEK_HOURS],
            None => return Err(Error::Unimputable { hour: i + 1 }),
        };
        out.push(value);
    }
    HourlySeries::new(Arc::clone(&series.calendar), out, series.market_id.clone())
}

/// Converts native-currency prices to EUR by dividing each hour by its day's
/// rate (native units per EUR). The rate is that of the trading day.
pub fn convert_currency(series: &HourlySeries, fx: &[f64]) -> Result<HourlySeries> {
    let cal = &series.calendar;
    if fx.len() != cal.num_days() {
        return Err(Error::ExchangeRate {
            day: fx.len().min(cal.num_days()) + 1,
            message: format!(
                "{} rates supplied for {} calendar days",
                fx.len(),
                cal.num_days()
            ),
        });
    }
    if let Some(d) = fx.iter().position(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::ExchangeRate {
            day: d + 1,
            message: format!("rate {} is not positive", fx[d]),
        });
    }
    let mut values = Vec::with_capacity(series.values.len());
    let mut t = 0;
    for (d, h) in cal.day_lengths().iter().enumerate() {
        for _ in 0..*h {
            values.push(series.values[t] / fx[d]);
            t += 1;
        }
    }
    HourlySeries::new(Arc::clone(cal), values, series.market_id.clone())
}

/// Reads `YYYY-MM-DD,rate` lines and returns one rate per calendar day.
/// A non-date first line is treated as a header.
pub fn read_fx(path: &Path, calendar: &TradingCalendar) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_fx(&text, path, calendar)
}

pub fn parse_fx(text: &str, path: &Path, calendar: &TradingCalendar) -> Result<Vec<f64>> {
    let mut rates: Vec<Option<f64>> = vec![None; calendar.num_days()];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        let (date_s, rate_s) = line
            .split_once(',')
            .ok_or_else(|| err("expected `YYYY-MM-DD,rate`".into()))?;
        let date = match chrono::NaiveDate::parse_from_str(date_s.trim(), "%Y-%m-%d") {
            Ok(d) => d,
            Err(_) if i == 0 => continue,
            Err(e) => return Err(err(format!("bad date {date_s:?}: {e}"))),
        };
        let rate: f64 = rate_s
            .trim()
            .parse()
            .map_err(|_| err(format!("bad rate {rate_s:?}")))?;
        if let Some(day) = calendar.day_of_date(date) {
            rates[day - 1] = Some(rate);
        }
    }
    rates
        .into_iter()
        .enumerate()
        .map(|(d, r)| {
            r.ok_or_else(|| Error::ExchangeRate {
                day: d + 1,
                message: "no rate in FX file".into(),
            })
        })
        .collect()
}

/// The early-settling market and a target market on one calendar.
///
/// The calendar covers the early-settling series completely; the target may
/// stop one day earlier, which is the situation at forecast time.
#[derive(Debug, Clone)]
pub struct MarketPair {
    calendar: Arc<TradingCalendar>,
    exaa: Vec<f64>,
    target: Vec<f64>,
    exaa_id: String,
    target_id: String,
}

impl MarketPair {
    pub fn new(exaa: HourlySeries, target: HourlySeries) -> Result<Self> {
        if exaa.calendar != target.calendar {
            return Err(Error::Data(
                "early-settling and target series use different calendars".into(),
            ));
        }
        Self::from_parts(
            exaa.calendar,
            exaa.values,
            target.values,
            exaa.market_id,
            target.market_id,
        )
    }

    pub fn from_parts(
        calendar: Arc<TradingCalendar>,
        exaa: Vec<f64>,
        target: Vec<f64>,
        exaa_id: impl Into<String>,
        target_id: impl Into<String>,
    ) -> Result<Self> {
        if exaa.len() != calendar.total_hours() {
            return Err(Error::Data(format!(
                "early-settling series has {} values, calendar has {} hours",
                exaa.len(),
                calendar.total_hours()
            )));
        }
        let extra = exaa.len().checked_sub(target.len()).ok_or_else(|| {
            Error::Data("target series is longer than the early-settling series".into())
        })?;
        let last_day = calendar.hours_in_day(calendar.num_days())?;
        if extra != 0 && extra != last_day {
            return Err(Error::Data(format!(
                "early-settling series extends {extra} hours past the target; expected 0 or {last_day}"
            )));
        }
        if exaa.iter().chain(&target).any(|v| !v.is_finite()) {
            return Err(Error::Data("market pair contains non-finite prices".into()));
        }
        Ok(Self {
            calendar,
            exaa,
            target,
            exaa_id: exaa_id.into(),
            target_id: target_id.into(),
        })
    }

    pub fn calendar(&self) -> &Arc<TradingCalendar> {
        &self.calendar
    }

    pub fn exaa(&self) -> &[f64] {
        &self.exaa
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn exaa_id(&self) -> &str {
        &self.exaa_id
    }

    pub fn target_id(&self) -> &str {
        &self.target_id
    }

    /// View of days `first_day ..= first_day + days - 1` as in-sample data plus
    /// the following day as the forecast day.
    pub fn window(&self, first_day: usize, days: usize) -> Result<PairWindow<'_>> {
        let cal = &self.calendar;
        let forecast_day = first_day + days;
        if days == 0 || first_day == 0 || forecast_day > cal.num_days() {
            return Err(Error::InsufficientData {
                required: forecast_day,
                available: cal.num_days(),
            });
        }
        let start = cal.day_start(first_day)? - 1;
        let end = cal.day_start(forecast_day)? - 1;
        let next_end = end + cal.hours_in_day(forecast_day)?;
        if self.target.len() < end {
            return Err(Error::InsufficientData {
                required: forecast_day - 1,
                available: cal.day_of_time(self.target.len().max(1))?,
            });
        }
        PairWindow::new(
            &self.target[start..end],
            &self.exaa[start..next_end],
            &cal.day_lengths()[first_day - 1..forecast_day],
        )
    }

    /// Shifted pair over the whole target range; needs the early-settling
    /// series to reach one day past the target.
    pub fn build_shifted(&self) -> Result<ShiftedPair> {
        let days = self.calendar.day_of_time(self.target.len().max(1))?;
        build_shifted(
            &self.target,
            &self.exaa,
            &self.calendar.day_lengths()[..(days + 1).min(self.calendar.num_days())],
        )
    }
}

/// In-sample window plus the next day's early-settling block.
#[derive(Debug, Clone, Copy)]
pub struct PairWindow<'a> {
    target: &'a [f64],
    exaa: &'a [f64],
    day_lengths: &'a [u8],
}

impl<'a> PairWindow<'a> {
    /// `target` holds the in-sample hours, `exaa` the in-sample hours followed by
    /// the forecast day, `day_lengths` the in-sample days followed by the forecast day.
    pub fn new(target: &'a [f64], exaa: &'a [f64], day_lengths: &'a [u8]) -> Result<Self> {
        let (next, days) = day_lengths
            .split_last()
            .ok_or_else(|| Error::InvalidArgument("window has no forecast day".into()))?;
        let n: usize = days.iter().map(|&h| h as usize).sum();
        if target.len() != n {
            return Err(Error::InvalidArgument(format!(
                "window target has {} hours but its days sum to {}",
                target.len(),
                n
            )));
        }
        if exaa.len() != n + *next as usize {
            return Err(Error::InvalidArgument(format!(
                "window early-settling series has {} hours, expected {}",
                exaa.len(),
                n + *next as usize
            )));
        }
        Ok(Self {
            target,
            exaa,
            day_lengths,
        })
    }

    pub fn target(&self) -> &'a [f64] {
        self.target
    }

    /// In-sample early-settling prices.
    pub fn exaa_history(&self) -> &'a [f64] {
        &self.exaa[..self.target.len()]
    }

    /// Early-settling prices of the forecast day.
    pub fn exaa_next(&self) -> &'a [f64] {
        &self.exaa[self.target.len()..]
    }

    pub fn exaa_extended(&self) -> &'a [f64] {
        self.exaa
    }

    pub fn day_lengths(&self) -> &'a [u8] {
        self.day_lengths
    }

    pub fn forecast_hours(&self) -> usize {
        *self.day_lengths.last().expect("non-empty") as usize
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn build_shifted(&self) -> Result<ShiftedPair> {
        build_shifted(self.target, self.exaa, self.day_lengths)
    }
}

/// Pairs `(exaa[t + H(d̃(t + 1))], target[t])` for every target hour `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedPair {
    pub shifted: Vec<[f64; 2]>,
}

impl ShiftedPair {
    pub fn len(&self) -> usize {
        self.shifted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifted.is_empty()
    }
}

/// Re-indexes `exaa` so hour `t` carries the early-settling price of
/// `t + H(d̃(t + 1))`. `day_lengths` must cover the target hours plus the hour after.
pub fn build_shifted(target: &[f64], exaa: &[f64], day_lengths: &[u8]) -> Result<ShiftedPair> {
    let mut shifted = Vec::with_capacity(target.len());
    let mut t = 0usize; // 0-based hour index
    'days: for (j, &h) in day_lengths.iter().enumerate() {
        let h = h as usize;
        for pos in 0..h {
            if t == target.len() {
                break 'days;
            }
            let shift = if pos + 1 < h {
                h
            } else {
                match day_lengths.get(j + 1) {
                    Some(&next) => next as usize,
                    None => {
                        return Err(Error::Data(format!(
                            "calendar ends before the day after hour {}",
                            t + 1
                        )))
                    }
                }
            };
            let src = t + shift;
            let value = *exaa.get(src).ok_or_else(|| {
                Error::Data(format!(
                    "early-settling series has {} hours; shifted pair needs hour {}",
                    exaa.len(),
                    src + 1
                ))
            })?;
            shifted.push([value, target[t]]);
            t += 1;
        }
    }
    if shifted.len() != target.len() {
        return Err(Error::Data(
            "day lengths do not cover the target series".into(),
        ));
    }
    Ok(ShiftedPair { shifted })
}
