//! Text renderings of study results. Floats are written in Rust's shortest
//! round-trip form, so parsing a file back yields the exact values.

use std::fmt::Write;

use crate::calendar::TradingCalendar;
use crate::error::{Error, Result};
use crate::models::ModelKind;

use super::metrics::{MetricReport, Significance};
use super::{ErrorMatrix, RollInfo};

const ERROR_COLUMNS: [&str; 6] = ["roll", "day", "date", "hour", "t", "actual"];

/// One row per model and metric.
pub fn metrics_csv(report: &MetricReport) -> String {
    let mut out = String::from("market,model,metric,value,bootstrap_sd,best,within_two_sd\n");
    let mut row = |model: ModelKind, metric: &str, value: f64, sd: f64, flag: Significance| {
        let _ = writeln!(
            out,
            "{},{model},{metric},{value},{sd},{},{}",
            report.market, flag.best, flag.within_two_sigma
        );
    };
    for m in &report.models {
        row(m.model, "mae", m.mae, m.mae_sd, m.mae_flag);
        row(m.model, "rmse", m.rmse, m.rmse_sd, m.rmse_flag);
    }
    out
}

/// Long format: one row per model and day position.
pub fn hourly_csv(report: &MetricReport) -> String {
    let mut out = String::from("model,hour,count,mae,rmse\n");
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for h in &report.hourly {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            h.model,
            h.hour,
            h.count,
            opt(h.mae),
            opt(h.rmse)
        );
    }
    out
}

/// Long format table of the partitions named `scheme`.
pub fn partition_csv(report: &MetricReport, scheme: &str) -> String {
    let mut out = String::from("scheme,model,label,count,mae\n");
    for p in report.partitions.iter().filter(|p| p.scheme == scheme) {
        for r in &p.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                p.scheme, p.model, r.label, r.count, r.mae
            );
        }
    }
    out
}

pub fn report_json(report: &MetricReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// Every out-of-sample error with its roll, day, position and hour index.
pub fn errors_csv(errors: &ErrorMatrix, cal: &TradingCalendar) -> Result<String> {
    let mut out = ERROR_COLUMNS.join(",");
    for m in &errors.models {
        out.push(',');
        out.push_str(m.name());
    }
    out.push('\n');
    for r in &errors.rolls {
        let date = cal.date_of_day(r.day)?;
        for h in 0..r.hours {
            let i = r.offset + h;
            let _ = write!(
                out,
                "{},{},{date},{},{},{}",
                r.roll,
                r.day,
                h + 1,
                errors.hours[i],
                errors.actuals[i]
            );
            for e in &errors.errors {
                let _ = write!(out, ",{}", e[i]);
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// Reads a table written by [`errors_csv`]. Selected orders are not part of
/// the export and come back empty.
pub fn parse_errors_csv(text: &str) -> Result<ErrorMatrix> {
    let path = std::path::PathBuf::from("errors.csv");
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.clone(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty error export".into()))?;
    let cols: Vec<&str> = header.trim().split(',').collect();
    if cols.len() < ERROR_COLUMNS.len() || cols[..ERROR_COLUMNS.len()] != ERROR_COLUMNS {
        return Err(parse_err(1, format!("unexpected header {header:?}")));
    }
    let models = cols[ERROR_COLUMNS.len()..]
        .iter()
        .map(|c| c.parse::<ModelKind>())
        .collect::<Result<Vec<_>>>()?;

    let mut m = ErrorMatrix {
        errors: vec![Vec::new(); models.len()],
        orders: vec![Vec::new(); models.len()],
        models,
        rolls: Vec::new(),
        hours: Vec::new(),
        actuals: Vec::new(),
    };
    for (idx, line) in lines {
        let ln = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != cols.len() {
            return Err(parse_err(
                ln,
                format!("expected {} fields, found {}", cols.len(), fields.len()),
            ));
        }
        let int = |i: usize| {
            fields[i]
                .parse::<usize>()
                .map_err(|e| parse_err(ln, format!("{}: {e}", ERROR_COLUMNS[i])))
        };
        let float = |i: usize| {
            fields[i]
                .parse::<f64>()
                .map_err(|e| parse_err(ln, format!("column {}: {e}", i + 1)))
        };
        let (roll, day, hour, t) = (int(0)?, int(1)?, int(3)?, int(4)?);
        let starts_roll = m.rolls.last().is_none_or(|r| r.roll != roll);
        if starts_roll {
            if hour != 1 {
                return Err(parse_err(
                    ln,
                    format!("roll {roll} does not start at hour 1"),
                ));
            }
            m.rolls.push(RollInfo {
                roll,
                day,
                first_hour: t,
                hours: 0,
                offset: m.hours.len(),
            });
        }
        let r = m.rolls.last_mut().expect("roll pushed above");
        if r.day != day || hour != r.hours + 1 || t != r.first_hour + r.hours {
            return Err(parse_err(ln, format!("row out of sequence in roll {roll}")));
        }
        r.hours += 1;
        m.hours.push(t);
        m.actuals.push(float(5)?);
        for k in 0..m.models.len() {
            let v = float(ERROR_COLUMNS.len() + k)?;
            m.errors[k].push(v);
        }
    }
    if m.is_empty() {
        return Err(parse_err(2, "error export has no rows".into()));
    }
    Ok(m)
}
