//! Biased (divide-by-n) sample autocovariances, univariate and bivariate.
//!
//! Long series with many lags go through an FFT; short ones use the direct sum.

use nalgebra::Matrix2;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Direct summation is used below this many multiply-adds.
const DIRECT_WORK_LIMIT: usize = 1 << 16;

/// `γ(0..=L)` of a mean-removed series.
#[derive(Debug, Clone, PartialEq)]
pub struct Autocovariance {
    pub lags: Vec<f64>,
    pub n: usize,
    pub mean: f64,
}

impl Autocovariance {
    /// Wraps a known autocovariance sequence (closed forms, oracles).
    pub fn from_lags(lags: Vec<f64>, n: usize) -> Self {
        Self { lags, n, mean: 0.0 }
    }

    pub fn max_lag(&self) -> usize {
        self.lags.len().saturating_sub(1)
    }
}

/// `Γ(0..=L)` with `Γ(k) = (1/n) Σ_t (y_{t+k} - ȳ)(y_t - ȳ)'`, so `Γ(-k) = Γ(k)'`.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateAutocovariance {
    pub lags: Vec<Matrix2<f64>>,
    pub n: usize,
    pub mean: [f64; 2],
}

impl BivariateAutocovariance {
    pub fn from_lags(lags: Vec<Matrix2<f64>>, n: usize) -> Self {
        Self {
            lags,
            n,
            mean: [0.0; 2],
        }
    }

    pub fn max_lag(&self) -> usize {
        self.lags.len().saturating_sub(1)
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn check_length(n: usize, max_lag: usize) -> Result<()> {
    if n <= max_lag {
        return Err(Error::TooShort {
            required: max_lag + 1,
            available: n,
        });
    }
    Ok(())
}

/// Sample autocovariance up to `max_lag` after removing the sample mean.
pub fn sample_autocov(series: &[f64], max_lag: usize) -> Result<Autocovariance> {
    let n = series.len();
    check_length(n, max_lag)?;
    let mu = mean(series);
    let centered: Vec<f64> = series.iter().map(|x| x - mu).collect();
    let lags = if n.saturating_mul(max_lag + 1) <= DIRECT_WORK_LIMIT {
        cross_direct(&centered, &centered, max_lag)
    } else {
        let spec = spectrum(&[&centered], n + max_lag);
        let prod: Vec<Complex<f64>> = spec[0].iter().map(|z| z * z.conj()).collect();
        inverse_lags(prod, max_lag, n)
    };
    Ok(Autocovariance { lags, n, mean: mu })
}

/// Bivariate sample autocovariance up to `max_lag`.
pub fn sample_autocov_bivariate(
    series: &[[f64; 2]],
    max_lag: usize,
) -> Result<BivariateAutocovariance> {
    let n = series.len();
    check_length(n, max_lag)?;
    let comps: [Vec<f64>; 2] = [0, 1].map(|c| series.iter().map(|v| v[c]).collect::<Vec<_>>());
    let mu = [mean(&comps[0]), mean(&comps[1])];
    let centered: [Vec<f64>; 2] = [0, 1].map(|c| comps[c].iter().map(|x| x - mu[c]).collect());

    // cross[a][b][k] = (1/n) Σ_t x_a(t + k) x_b(t)
    let mut cross: [[Vec<f64>; 2]; 2] = Default::default();
    if n.saturating_mul(max_lag + 1) <= DIRECT_WORK_LIMIT {
        for a in 0..2 {
            for b in 0..2 {
                cross[a][b] = cross_direct(&centered[a], &centered[b], max_lag);
            }
        }
    } else {
        let spec = spectrum(&[&centered[0], &centered[1]], n + max_lag);
        for a in 0..2 {
            for b in 0..2 {
                let prod: Vec<Complex<f64>> = spec[a]
                    .iter()
                    .zip(&spec[b])
                    .map(|(x, y)| x * y.conj())
                    .collect();
                cross[a][b] = inverse_lags(prod, max_lag, n);
            }
        }
    }
    let lags = (0..=max_lag)
        .map(|k| {
            Matrix2::new(
                cross[0][0][k],
                cross[0][1][k],
                cross[1][0][k],
                cross[1][1][k],
            )
        })
        .collect();
    Ok(BivariateAutocovariance { lags, n, mean: mu })
}

fn cross_direct(a: &[f64], b: &[f64], max_lag: usize) -> Vec<f64> {
    let n = a.len();
    (0..=max_lag)
        .map(|k| {
            a[k..]
                .iter()
                .zip(&b[..n - k])
                .map(|(x, y)| x * y)
                .sum::<f64>()
                / n as f64
        })
        .collect()
}

fn spectrum(series: &[&[f64]], min_len: usize) -> Vec<Vec<Complex<f64>>> {
    let size = min_len.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(size);
    series
        .iter()
        .map(|s| {
            let mut buf: Vec<Complex<f64>> = s.iter().map(|&x| Complex::new(x, 0.0)).collect();
            buf.resize(size, Complex::new(0.0, 0.0));
            fft.process(&mut buf);
            buf
        })
        .collect()
}

fn inverse_lags(mut prod: Vec<Complex<f64>>, max_lag: usize, n: usize) -> Vec<f64> {
    let size = prod.len();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_inverse(size).process(&mut prod);
    let scale = 1.0 / (size as f64 * n as f64);
    prod[..=max_lag].iter().map(|z| z.re * scale).collect()
}
