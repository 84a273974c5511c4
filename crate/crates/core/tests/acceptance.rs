//! Acceptance criteria. Runs as a plain binary so every criterion prints
//! exactly one PASS/FAIL line; the process fails if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use chrono::NaiveDate;
use common::*;
use dayahead::backtest::{
    bootstrap_error_sds, bootstrap_sd, build_report, hourly_metrics, run_study, BootstrapMetric,
    ErrorMatrix, MetricReport, StudyConfig,
};
use dayahead::cli::{cmd_backtest, cmd_synth, with_jobs, RunConfig, RunOptions};
use dayahead::dm::{dm_statistic, DmConfig, ONE_SIDED_95};
use dayahead::estimation::{
    levinson_durbin, sample_autocov_bivariate, select_order_aic, select_var_order_aic, whittle,
    Autocovariance,
};
use dayahead::ingest::build_shifted;
use dayahead::models::{DeltaForm, ModelKind, ModelSpec};
use dayahead::synth::{generate, SynthConfig};
use dayahead::{MarketPair, TradingCalendar};
use nalgebra::Matrix2;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("estimation oracles", criterion_1),
        ("stationarity guarantee", criterion_2),
        ("coefficient recovery", criterion_3),
        ("qualitative MAE pattern", criterion_4),
        ("bookkeeping identities", criterion_5),
        ("DM size", criterion_6),
        ("bootstrap sanity", criterion_7),
        ("DST correctness", criterion_8),
        ("determinism at full scale", criterion_9),
        ("default-protocol pipeline", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(o) => o,
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} [{secs:.1} s]",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name}: {detail} [{secs:.1} s]",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

/// Levinson-Durbin and Whittle against dense Toeplitz solves.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1001);
    let mut worst_ld: f64 = 0.0;
    for _ in 0..100 {
        let p = r.random_range(1..=50);
        let lags = random_psd_lags(p, &mut r);
        let path = levinson_durbin(&Autocovariance::from_lags(lags.clone(), 1000), p)
            .map_err(|e| e.to_string())?;
        worst_ld = worst_ld.max(rel_err(&path.coefficients, &dense_yule_walker(&lags, p)));
    }
    let mut worst_w: f64 = 0.0;
    for _ in 0..100 {
        let p = r.random_range(1..=20);
        let y = random_bivariate_series(600, &mut r);
        let acov = sample_autocov_bivariate(&y, p).map_err(|e| e.to_string())?;
        let path = whittle(&acov, p).map_err(|e| e.to_string())?;
        let dense = dense_block_yule_walker(&acov.lags, p);
        worst_w = worst_w.max(rel_err(&flatten(&path.coefficients), &flatten(&dense)));
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst_ld < 1e-8 && worst_w < 1e-6 && secs < 10.0,
        format!("max rel. error Levinson {worst_ld:.1e} (< 1e-8), Whittle {worst_w:.1e} (< 1e-6), {secs:.2} s (< 10 s)"),
    )
}

/// A random input of one of several shapes that stress the estimators.
fn random_input(r: &mut rand_chacha::ChaCha8Rng) -> Vec<f64> {
    let n = r.random_range(50..1500);
    let kind = r.random_range(0..6);
    let mut x: Vec<f64> = (0..n).map(|_| normal(r)).collect();
    match kind {
        0 => {}
        1 => {
            for t in 1..n {
                x[t] += x[t - 1];
            }
        }
        2 => {
            for t in 1..n {
                x[t] += 0.999 * x[t - 1];
            }
        }
        3 => {
            for (t, v) in x.iter_mut().enumerate() {
                *v += 0.05 * t as f64 + 10.0 * (2.0 * std::f64::consts::PI * t as f64 / 24.0).sin();
            }
        }
        4 => {
            for v in x.iter_mut() {
                *v = v.powi(3);
            }
        }
        _ => {
            for v in x.iter_mut() {
                if r.random_range(0.0..1.0) < 0.01 {
                    *v += 100.0;
                }
            }
        }
    }
    x
}

/// Every AIC-selected AR and VAR fit has companion spectral radius below one.
fn criterion_2() -> Outcome {
    let mut r = rng(2002);
    let (mut fits, mut worst) = (0usize, 0.0f64);
    let mut bad = Vec::new();
    for i in 0..1000 {
        let x = random_input(&mut r);
        let n = x.len();
        let ar = select_order_aic(&x, r.random_range(1..=(n / 4).min(150)))
            .map_err(|e| format!("input {i}: {e}"))?;
        let rho = ar.companion_spectral_radius();
        worst = worst.max(rho);
        fits += 1;
        if !(rho < 1.0 && ar.is_stationary()) {
            bad.push(format!("AR input {i}: radius {rho}"));
        }
        let other = random_input(&mut r);
        let y: Vec<[f64; 2]> = x
            .iter()
            .zip(other.iter().cycle())
            .map(|(a, b)| [*a, 0.5 * a + b])
            .collect();
        let var = select_var_order_aic(&y, r.random_range(1..=(n / 8).clamp(1, 40)))
            .map_err(|e| format!("input {i}: {e}"))?;
        let rho = var.companion_spectral_radius();
        worst = worst.max(rho);
        fits += 1;
        if rho.is_nan() || rho >= 1.0 {
            bad.push(format!("VAR input {i}: radius {rho}"));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{fits} fits on 1000 inputs, largest spectral radius {worst:.6}, violations {bad:?}"
        ),
    )
}

/// AR(3) and VAR(1) coefficients recovered from n = 20000.
fn criterion_3() -> Outcome {
    let phi = [0.5, -0.3, 0.2];
    let a = Matrix2::new(0.5, 0.2, -0.3, 0.4);
    let sigma = Matrix2::new(1.0, 0.4, 0.4, 2.0);
    let (mut ar_ok, mut var_ok) = (0, 0);
    for seed in 0..100 {
        let mut r = rng(3000 + seed);
        let x = simulate_ar(&phi, 20_000, &mut r);
        let fit = select_order_aic(&x, 20).map_err(|e| e.to_string())?;
        let c = &fit.coefficients;
        let close = fit.order >= 3
            && c.iter()
                .enumerate()
                .all(|(k, v)| (v - phi.get(k).copied().unwrap_or(0.0)).abs() < 0.05);
        ar_ok += close as usize;

        let y = simulate_var1(&a, &sigma, 20_000, &mut r);
        let v = select_var_order_aic(&y, 10).map_err(|e| e.to_string())?;
        let close = v.coefficients.iter().enumerate().all(|(k, m)| {
            let truth = if k == 0 { a } else { Matrix2::zeros() };
            (m - truth).iter().all(|d| d.abs() < 0.05)
        });
        var_ok += close as usize;
    }
    check(
        ar_ok >= 95 && var_ok >= 95,
        format!("AR(3) within 0.05 on {ar_ok}/100 seeds, VAR(1) on {var_ok}/100 (need >= 95)"),
    )
}

fn small_study(
    models: &[ModelKind],
    in_sample_days: usize,
    rolls: usize,
    seed: u64,
) -> StudyConfig {
    StudyConfig {
        in_sample_days,
        rolls,
        models: models
            .iter()
            .map(|&k| match k {
                ModelKind::Ar | ModelKind::DeltaAr => ModelSpec::new(k).with_p_max(200),
                ModelKind::Var2d | ModelKind::Var2dShifted => ModelSpec::new(k).with_p_max(100),
                _ => ModelSpec::new(k),
            })
            .collect(),
        bootstrap_replicates: 200,
        seed,
        refit_stride: 1,
        first_day: 1,
        annual_groups: 2,
    }
}

fn mae_of(report: &MetricReport, kind: ModelKind) -> f64 {
    report.model(kind).expect("model in report").mae
}

/// Synthetic coupled markets reproduce the expected MAE ordering.
fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (d, rolls) = (56, 200);
    let strong = SynthConfig {
        days: d + rolls,
        exaa_ar: vec![0.95],
        exaa_noise: 3.0,
        spread_ar: 0.3,
        spread_noise: 0.5,
        idio_noise: 0.3,
        ..Default::default()
    };
    let models = [
        ModelKind::Naive,
        ModelKind::Ar,
        ModelKind::NaiveExaa,
        ModelKind::DeltaAr,
    ];
    let mut ordered = 0;
    for seed in 0..20 {
        let out = generate(&SynthConfig {
            seed,
            ..strong.clone()
        })
        .map_err(|e| e.to_string())?;
        let study = small_study(&models, d, rolls, seed);
        let errors = run_study(&out.pair, &study).map_err(|e| e.to_string())?;
        let rep =
            build_report(&errors, out.pair.calendar(), "SYN", &study).map_err(|e| e.to_string())?;
        let (naive, ar) = (mae_of(&rep, ModelKind::Naive), mae_of(&rep, ModelKind::Ar));
        let exaa_best = mae_of(&rep, ModelKind::NaiveExaa).max(mae_of(&rep, ModelKind::DeltaAr));
        ordered += (naive > ar && ar > exaa_best) as usize;
    }

    let persistent = SynthConfig {
        spread_mean: 0.0,
        spread_ar: 0.9,
        spread_noise: 2.0,
        idio_noise: 0.2,
        ..strong
    };
    // the centered recursion is the one consistent with the fitted spread model
    let models = [ModelKind::NaiveExaa, ModelKind::DeltaAr];
    let mut delta_wins = 0;
    let mut uncentered_wins = 0;
    let (mut sum_delta, mut sum_uncentered, mut sum_naive) = (0.0, 0.0, 0.0);
    for seed in 0..20 {
        let out = generate(&SynthConfig {
            seed: 100 + seed,
            ..persistent.clone()
        })
        .map_err(|e| e.to_string())?;
        let mut maes = Vec::new();
        for form in [DeltaForm::Centered, DeltaForm::Uncentered] {
            let mut study = small_study(&models, d, rolls, seed);
            study.models[1] = study.models[1].with_delta_form(form);
            let errors = run_study(&out.pair, &study).map_err(|e| e.to_string())?;
            let rep = build_report(&errors, out.pair.calendar(), "SYN", &study)
                .map_err(|e| e.to_string())?;
            maes.push((
                mae_of(&rep, ModelKind::NaiveExaa),
                mae_of(&rep, ModelKind::DeltaAr),
            ));
        }
        let (ne, centered) = maes[0];
        let uncentered = maes[1].1;
        sum_naive += ne;
        sum_delta += centered;
        sum_uncentered += uncentered;
        delta_wins += (centered < ne) as usize;
        uncentered_wins += (uncentered < ne) as usize;
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        ordered >= 19 && delta_wins >= 19 && secs < 300.0,
        format!(
            "naive > ar > {{delta_ar, naive_exaa}} on {ordered}/20 seeds; persistent spread: centered delta_ar < naive_exaa on {delta_wins}/20 (mean MAE {:.3} vs {:.3}; uncentered form wins {uncentered_wins}/20 at {:.3}); {secs:.1} s (< 300 s)",
            sum_delta / 20.0,
            sum_naive / 20.0,
            sum_uncentered / 20.0
        ),
    )
}

/// Exact count identities plus the MAE decomposition over hours.
fn bookkeeping(errors: &ErrorMatrix, no_dst: bool) -> Result<(), String> {
    let hourly = hourly_metrics(errors);
    for (m, &kind) in errors.models.iter().enumerate() {
        let rows: Vec<_> = hourly.iter().filter(|h| h.model == kind).collect();
        let count: usize = rows.iter().map(|h| h.count).sum();
        if count != errors.len() {
            return Err(format!(
                "{kind}: Σ#(h) = {count} but {} errors",
                errors.len()
            ));
        }
        let expected: usize = errors.rolls.iter().map(|r| r.hours).sum();
        if count != expected {
            return Err(format!("{kind}: Σ#(h) = {count}, Σ H = {expected}"));
        }
        let e = &errors.errors[m];
        let mae = e.iter().map(|x| x.abs()).sum::<f64>() / e.len() as f64;
        let weighted = rows
            .iter()
            .filter_map(|h| h.mae.map(|v| v * h.count as f64))
            .sum::<f64>()
            / count as f64;
        if (mae - weighted).abs() > 1e-12 * mae.max(1.0) {
            return Err(format!("{kind}: MAE {mae} vs weighted hourly {weighted}"));
        }
        if no_dst {
            let r_max = errors.rolls.len();
            if rows.iter().take(24).any(|h| h.count != r_max) || rows[24].count != 0 {
                return Err(format!("{kind}: #(h) differs from r_max = {r_max}"));
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut runs = 0;
    for (seed, eu) in [(1u64, false), (2, true), (3, false), (4, true)] {
        let cfg = SynthConfig {
            start_date: NaiveDate::from_ymd_opt(2013, 2, 1).expect("date"),
            days: 330,
            eu_clock_changes: eu,
            seed,
            ..Default::default()
        };
        let out = generate(&cfg).map_err(|e| e.to_string())?;
        let study = StudyConfig {
            refit_stride: 3,
            ..small_study(&ModelKind::ALL, 30, 300, seed)
        };
        let errors = run_study(&out.pair, &study).map_err(|e| e.to_string())?;
        bookkeeping(&errors, !eu)?;
        if eu && errors.rolls.iter().all(|r| r.hours == 24) {
            return Err("EU calendar run contains no clock-change day".into());
        }
        runs += 1;
    }
    Ok(format!(
        "identities exact on {runs} studies (2 with clock changes, 6 models each)"
    ))
}

/// One-sided DM rejection rate under i.i.d. zero-mean loss differentials.
fn criterion_6() -> Outcome {
    let cfg = DmConfig::default();
    let trials = 2000;
    let mut rejections = 0;
    for trial in 0..trials {
        let mut r = rng(6000 + trial);
        let delta: Vec<f64> = (0..500).map(|_| normal(&mut r)).collect();
        let e = dm_statistic(&delta, &cfg).map_err(|e| e.to_string())?;
        rejections += (e.statistic > ONE_SIDED_95) as usize;
    }
    let rate = rejections as f64 / trials as f64;
    check(
        (rate - 0.05).abs() <= 0.015,
        format!(
            "rejection rate {:.2}% over {trials} trials (target 5% ± 1.5%)",
            100.0 * rate
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut r = rng(7007);
    let n = 10_000;
    let losses: Vec<f64> = (0..n).map(|_| normal(&mut r)).collect();
    let mean = losses.iter().sum::<f64>() / n as f64;
    let sd = (losses.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    let expected = sd / (n as f64).sqrt();
    let boot = bootstrap_sd(&losses, BootstrapMetric::Mean, 1000, 77);
    let ratio = boot / expected;
    let constant = bootstrap_sd(&vec![0.7; n], BootstrapMetric::Mean, 1000, 77);
    let (c_mae, c_rmse) = bootstrap_error_sds(&vec![-0.7; n], 1000, 77);
    check(
        (ratio - 1.0).abs() < 0.2 && constant == 0.0 && c_mae == 0.0 && c_rmse == 0.0,
        format!("bootstrap SD / (sd/√N) = {ratio:.3} (within 0.8..1.2); constant losses give {constant}, {c_mae}, {c_rmse}"),
    )
}

/// Five-day calendar with one short and one long day against a hand-built index table.
fn criterion_8() -> Outcome {
    let cal = Arc::new(
        TradingCalendar::new(
            NaiveDate::from_ymd_opt(2021, 3, 27).expect("date"),
            vec![24, 23, 24, 25, 24],
        )
        .map_err(|e| e.to_string())?,
    );
    let total = cal.total_hours();
    if total != 120 {
        return Err(format!("calendar has {total} hours"));
    }
    let exaa: Vec<f64> = (1..=total).map(|t| t as f64).collect();
    let target: Vec<f64> = (1..=total)
        .map(|t| 1000.0 + (t % 7) as f64 + 0.1 * (t % 5) as f64)
        .collect();
    let pair = MarketPair::from_parts(Arc::clone(&cal), exaa.clone(), target.clone(), "E", "Y")
        .map_err(|e| e.to_string())?;
    let study = StudyConfig {
        in_sample_days: 1,
        rolls: 4,
        models: vec![
            ModelSpec::new(ModelKind::NaiveExaa),
            ModelSpec::new(ModelKind::Ar).with_p_max(3),
            ModelSpec::new(ModelKind::DeltaAr).with_p_max(3),
            ModelSpec::new(ModelKind::Var2dShifted).with_p_max(2),
        ],
        bootstrap_replicates: 10,
        seed: 8,
        refit_stride: 1,
        first_day: 1,
        annual_groups: 1,
    };
    let errors = run_study(&pair, &study).map_err(|e| e.to_string())?;

    // forecast days 2..5 and their hour indices, written out by hand
    let table: [(usize, std::ops::RangeInclusive<usize>); 4] =
        [(2, 25..=47), (3, 48..=71), (4, 72..=96), (5, 97..=120)];
    let counts: Vec<usize> = errors.rolls.iter().map(|r| r.hours).collect();
    if counts != [23, 24, 25, 24] {
        return Err(format!("per-roll error counts {counts:?}"));
    }
    let mut expected_hours = Vec::new();
    for (roll, (day, range)) in errors.rolls.iter().zip(table.iter()) {
        if roll.day != *day || roll.first_hour != *range.start() {
            return Err(format!(
                "roll {} is day {} starting at {}",
                roll.roll, roll.day, roll.first_hour
            ));
        }
        expected_hours.extend(range.clone());
    }
    if errors.hours != expected_hours {
        return Err("out-of-sample hour indices differ from the table".into());
    }
    let naive_exaa = errors.errors_of(ModelKind::NaiveExaa).expect("model");
    for (i, &t) in expected_hours.iter().enumerate() {
        let want = target[t - 1] - t as f64;
        if naive_exaa[i] != want || errors.actuals[i] != target[t - 1] {
            return Err(format!("hour {t}: error {} expected {want}", naive_exaa[i]));
        }
    }

    // shifted pairing: hour t carries the early price of t + H(day of t + 1)
    let shift_table = [
        (1usize, 25usize),
        (24, 47),
        (25, 48),
        (47, 71),
        (48, 72),
        (71, 96),
        (72, 97),
        (96, 120),
    ];
    let shifted =
        build_shifted(&target[..96], &exaa, cal.day_lengths()).map_err(|e| e.to_string())?;
    for (t, src) in shift_table {
        if shifted.shifted[t - 1] != [src as f64, target[t - 1]] {
            return Err(format!(
                "shifted pair at hour {t}: {:?}, expected early hour {src}",
                shifted.shifted[t - 1]
            ));
        }
    }
    bookkeeping(&errors, false)?;
    Ok(format!(
        "roll error counts {counts:?}; all {} forecasts and 8 shifted pairs match the hand table",
        expected_hours.len()
    ))
}

fn write_config(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).expect("write config");
    p
}

fn synth_full_scale(dir: &Path) -> Result<(), String> {
    let cfg = write_config(
        dir,
        "synth.toml",
        "seed = 2024\n[synth]\nstart_date = \"2010-01-01\"\ndays = 2555\neu_clock_changes = true\n",
    );
    cmd_synth(&RunOptions::new(cfg, dir.join("data"))).map_err(|e| e.to_string())?;
    Ok(())
}

const DATA_SECTION: &str =
    "[data]\ncalendar = \"data/calendar.csv\"\nexaa = \"data/exaa.csv\"\ntarget = \"data/target.csv\"\nmarket = \"SYN\"\n";

/// Full-scale study twice with different worker counts; reports must be byte-identical.
fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    synth_full_scale(dir.path())?;
    let cfg = write_config(
        dir.path(),
        "bt.toml",
        &format!("seed = 9\n{DATA_SECTION}[study]\nrefit_stride = 7\n"),
    );
    let start = Instant::now();
    let mut reports = Vec::new();
    for jobs in [1usize, 3] {
        let mut opts = RunOptions::new(&cfg, dir.path().join(format!("out{jobs}")));
        opts.jobs = Some(jobs);
        let manifest = with_jobs(Some(jobs), || cmd_backtest(&opts))
            .and_then(|r| r)
            .map_err(|e| e.to_string())?;
        if manifest.jobs != jobs {
            return Err(format!(
                "manifest records {} jobs, expected {jobs}",
                manifest.jobs
            ));
        }
        let bytes = std::fs::read(opts.out.join("report.json")).map_err(|e| e.to_string())?;
        reports.push(bytes);
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        reports[0] == reports[1] && secs < 1800.0,
        format!(
            "D=730, r_max=1825, 6 models, stride 7: report.json identical with 1 and 3 jobs ({} bytes); two runs took {secs:.1} s (< 1800 s)",
            reports[0].len()
        ),
    )
}

/// A config naming only data files runs the full default protocol.
fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    synth_full_scale(dir.path())?;
    let cfg_path = write_config(dir.path(), "bt.toml", DATA_SECTION);
    let cfg = RunConfig::load(&cfg_path).map_err(|e| e.to_string())?;
    let study = cfg.study.to_study_config(0).map_err(|e| e.to_string())?;
    let p = |k: ModelKind| study.models.iter().find(|m| m.kind == k).map(|m| m.p_max);
    let defaults_ok = study.in_sample_days == 730
        && study.rolls == 1825
        && study.bootstrap_replicates == 1000
        && study.refit_stride == 1
        && study.models.len() == 6
        && p(ModelKind::Ar) == Some(1400)
        && p(ModelKind::DeltaAr) == Some(1400)
        && p(ModelKind::Var2d) == Some(700)
        && p(ModelKind::Var2dShifted) == Some(700)
        && cfg.dm.q_max == 21;
    if !defaults_ok {
        return Err(format!("defaults differ from the protocol: {study:?}"));
    }
    let out = dir.path().join("out");
    let manifest = cmd_backtest(&RunOptions::new(&cfg_path, &out)).map_err(|e| e.to_string())?;
    let report: MetricReport =
        serde_json::from_slice(&std::fs::read(out.join("report.json")).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let cal =
        TradingCalendar::read(&dir.path().join("data/calendar.csv")).map_err(|e| e.to_string())?;
    let oos_hours: usize = cal.day_lengths()[730..].iter().map(|&h| h as usize).sum();
    let long_days = cal.day_lengths()[730..]
        .iter()
        .filter(|&&h| h == 25)
        .count();
    let h25 = report
        .hourly
        .iter()
        .find(|h| h.model == ModelKind::Ar && h.hour == 25)
        .map(|h| h.count);
    check(
        report.rolls == 1825
            && report.in_sample_days == 730
            && report.models.len() == 6
            && report.out_of_sample_hours == oos_hours
            && h25 == Some(long_days)
            && report.partitions.iter().any(|p| p.scheme == "annual" && p.rows.len() == 5),
        format!(
            "default protocol on 2555 days of CSV input: {} out-of-sample hours, {long_days} 25-hour days, wall time {:.1} s",
            report.out_of_sample_hours, manifest.wall_seconds
        ),
    )
}
