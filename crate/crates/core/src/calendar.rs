//! Hour/day bookkeeping for hourly series with 23- and 25-hour clock-change days.
//!
//! Hour indices `t` and day indices `d` are 1-based throughout this module:
//! day `d` covers hours `M(d) ..= M(d) + H(d) - 1` with `M(1) = 1`.
//! The hour ordering inside a 25-hour day is whatever the input file gives.

use std::fmt;
use std::io::Write;
use std::path::Path;

use chrono::{Datelike, Duration, NaiveDate, Weekday};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradingCalendar {
    first_day: NaiveDate,
    day_lengths: Vec<u8>,
    /// `offsets[d - 1] = M(d)`, with one trailing sentinel `M(days + 1)`.
    offsets: Vec<usize>,
}

impl TradingCalendar {
    pub fn new(first_day: NaiveDate, day_lengths: Vec<u8>) -> Result<Self> {
        if day_lengths.is_empty() {
            return Err(Error::Calendar("calendar has no days".into()));
        }
        let mut offsets = Vec::with_capacity(day_lengths.len() + 1);
        let mut m = 1usize;
        for (i, &h) in day_lengths.iter().enumerate() {
            if !(23..=25).contains(&h) {
                return Err(Error::Calendar(format!(
                    "day {} has {} hours; expected 23, 24 or 25",
                    i + 1,
                    h
                )));
            }
            offsets.push(m);
            m += h as usize;
        }
        offsets.push(m);
        Ok(Self {
            first_day,
            day_lengths,
            offsets,
        })
    }

    /// Calendar with every day 24 hours long.
    pub fn uniform(first_day: NaiveDate, days: usize) -> Result<Self> {
        Self::new(first_day, vec![24; days])
    }

    /// Calendar following the EU clock-change rule: the last Sunday of March
    /// has 23 hours and the last Sunday of October has 25.
    pub fn with_eu_clock_changes(first_day: NaiveDate, days: usize) -> Result<Self> {
        let lengths = (0..days)
            .map(|i| eu_hours_on(first_day + Duration::days(i as i64)))
            .collect();
        Self::new(first_day, lengths)
    }

    pub fn first_day(&self) -> NaiveDate {
        self.first_day
    }

    pub fn num_days(&self) -> usize {
        self.day_lengths.len()
    }

    pub fn total_hours(&self) -> usize {
        self.offsets[self.day_lengths.len()] - 1
    }

    pub fn day_lengths(&self) -> &[u8] {
        &self.day_lengths
    }

    /// `H(d)`.
    pub fn hours_in_day(&self, day: usize) -> Result<usize> {
        self.check_day(day)?;
        Ok(self.day_lengths[day - 1] as usize)
    }

    /// `M(d)`: the hour index at which day `d` starts.
    pub fn day_start(&self, day: usize) -> Result<usize> {
        self.check_day(day)?;
        Ok(self.offsets[day - 1])
    }

    /// `d̃(t)`: the day containing hour `t`.
    pub fn day_of_time(&self, hour: usize) -> Result<usize> {
        self.check_hour(hour)?;
        // number of day starts <= hour
        Ok(self.offsets.partition_point(|&m| m <= hour))
    }

    /// Position of hour `t` inside its day, starting at 1.
    pub fn hour_of_day(&self, hour: usize) -> Result<usize> {
        let d = self.day_of_time(hour)?;
        Ok(hour - self.offsets[d - 1] + 1)
    }

    pub fn date_of_day(&self, day: usize) -> Result<NaiveDate> {
        self.check_day(day)?;
        Ok(self.first_day + Duration::days(day as i64 - 1))
    }

    pub fn day_of_date(&self, date: NaiveDate) -> Option<usize> {
        let d = (date - self.first_day).num_days() + 1;
        (d >= 1 && d as usize <= self.num_days()).then_some(d as usize)
    }

    /// Sub-calendar covering days `first ..= first + days - 1`.
    pub fn slice(&self, first: usize, days: usize) -> Result<Self> {
        if days == 0 {
            return Err(Error::Calendar("empty calendar slice".into()));
        }
        self.check_day(first)?;
        self.check_day(first + days - 1)?;
        Self::new(
            self.date_of_day(first)?,
            self.day_lengths[first - 1..first - 1 + days].to_vec(),
        )
    }

    /// Label of hour `t` under `scheme`.
    pub fn partition_label(&self, hour: usize, scheme: &PartitionScheme) -> Result<String> {
        let day = self.day_of_time(hour)?;
        let date = self.date_of_day(day)?;
        match scheme {
            PartitionScheme::Monthly => Ok(MONTHS[date.month0() as usize].to_string()),
            PartitionScheme::Daily => Ok(weekday_label(date.weekday()).to_string()),
            PartitionScheme::Annual {
                group_count,
                first_day,
                last_day,
            } => {
                let group = annual_group(day, *group_count, *first_day, *last_day)?;
                Ok(format!("Y{}", group + 1))
            }
        }
    }

    /// Reads the `YYYY-MM-DD,H` sidecar format. Blank lines and `#` comments are skipped.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut first: Option<NaiveDate> = None;
        let mut prev: Option<NaiveDate> = None;
        let mut lengths = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message,
            };
            let (date_s, h_s) = line
                .split_once(',')
                .ok_or_else(|| parse_err("expected `YYYY-MM-DD,H`".into()))?;
            let date = NaiveDate::parse_from_str(date_s.trim(), "%Y-%m-%d")
                .map_err(|e| parse_err(format!("bad date {date_s:?}: {e}")))?;
            let h: u8 = h_s
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad hour count {h_s:?}")))?;
            if !(23..=25).contains(&h) {
                return Err(parse_err(format!("hour count {h} not in 23..=25")));
            }
            if let Some(p) = prev {
                if date != p + Duration::days(1) {
                    return Err(parse_err(format!("date {date} does not follow {p}")));
                }
            }
            first.get_or_insert(date);
            prev = Some(date);
            lengths.push(h);
        }
        let first = first.ok_or_else(|| Error::Calendar("calendar file has no days".into()))?;
        Self::new(first, lengths)
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        for (i, h) in self.day_lengths.iter().enumerate() {
            let date = self.first_day + Duration::days(i as i64);
            writeln!(w, "{},{}", date.format("%Y-%m-%d"), h)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("calendar output is ASCII")
    }

    fn check_day(&self, day: usize) -> Result<()> {
        if day == 0 || day > self.num_days() {
            return Err(Error::DayOutOfRange {
                day,
                days: self.num_days(),
            });
        }
        Ok(())
    }

    fn check_hour(&self, hour: usize) -> Result<()> {
        if hour == 0 || hour > self.total_hours() {
            return Err(Error::HourOutOfRange {
                hour,
                hours: self.total_hours(),
            });
        }
        Ok(())
    }
}

pub const MONTHS: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

pub const WEEKDAYS: [&str; 7] = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"];

fn weekday_label(w: Weekday) -> &'static str {
    WEEKDAYS[w.num_days_from_monday() as usize]
}

/// How out-of-sample hours are grouped for the temporal error analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionScheme {
    Monthly,
    Daily,
    /// `group_count` contiguous blocks of whole days over `first_day ..= last_day`.
    /// Every block has `floor(days / group_count)` days; the remainder goes to the last block.
    Annual {
        group_count: usize,
        first_day: usize,
        last_day: usize,
    },
}

impl PartitionScheme {
    pub fn name(&self) -> &'static str {
        match self {
            PartitionScheme::Monthly => "monthly",
            PartitionScheme::Daily => "daily",
            PartitionScheme::Annual { .. } => "annual",
        }
    }

    /// All labels of the scheme in display order.
    pub fn labels(&self) -> Vec<String> {
        match self {
            PartitionScheme::Monthly => MONTHS.iter().map(|s| s.to_string()).collect(),
            PartitionScheme::Daily => WEEKDAYS.iter().map(|s| s.to_string()).collect(),
            PartitionScheme::Annual { group_count, .. } => {
                (1..=*group_count).map(|g| format!("Y{g}")).collect()
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let PartitionScheme::Annual {
            group_count,
            first_day,
            last_day,
        } = self
        {
            if *group_count == 0 || *first_day == 0 || last_day < first_day {
                return Err(Error::InvalidArgument(format!(
                    "annual partition needs group_count >= 1 and 1 <= first_day <= last_day, got {self:?}"
                )));
            }
            if last_day - first_day + 1 < *group_count {
                return Err(Error::InvalidArgument(format!(
                    "annual partition of {} days cannot form {} groups",
                    last_day - first_day + 1,
                    group_count
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for PartitionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn annual_group(day: usize, groups: usize, first: usize, last: usize) -> Result<usize> {
    PartitionScheme::Annual {
        group_count: groups,
        first_day: first,
        last_day: last,
    }
    .validate()?;
    if day < first || day > last {
        return Err(Error::InvalidArgument(format!(
            "day {day} outside the partitioned range {first}..={last}"
        )));
    }
    let block = (last - first + 1) / groups;
    Ok(((day - first) / block).min(groups - 1))
}

fn last_sunday(year: i32, month: u32) -> NaiveDate {
    let next_month = if month == 12 {
        NaiveDate::from_ymd_opt(year + 1, 1, 1)
    } else {
        NaiveDate::from_ymd_opt(year, month + 1, 1)
    }
    .expect("valid month start");
    let last = next_month - Duration::days(1);
    last - Duration::days(last.weekday().num_days_from_sunday() as i64)
}

/// Hours on `date` under the EU clock-change rule.
pub fn eu_hours_on(date: NaiveDate) -> u8 {
    if date == last_sunday(date.year(), 3) {
        23
    } else if date == last_sunday(date.year(), 10) {
        25
    } else {
        24
    }
}
