//! Univariate Yule-Walker estimation by the Levinson-Durbin recursion.

use crate::error::{Error, Result};

use super::autocov::{sample_autocov, Autocovariance};

/// A fitted AR(p): `y_t = μ + Σ φ_k (y_{t-k} - μ) + ε_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArFit {
    pub mean: f64,
    pub order: usize,
    pub coefficients: Vec<f64>,
    pub sigma2: f64,
    pub aic: f64,
    pub n: usize,
}

impl ArFit {
    /// `n log σ̂² + 2 (p + 1)`.
    pub fn aic_value(n: usize, sigma2: f64, order: usize) -> f64 {
        n as f64 * sigma2.ln() + 2.0 * (order as f64 + 1.0)
    }

    pub fn coefficient_sum(&self) -> f64 {
        self.coefficients.iter().sum()
    }

    /// True if every root of `1 - Σ φ_k z^k` lies outside the unit circle,
    /// tested by stepping the coefficients down to reflection coefficients.
    pub fn is_stationary(&self) -> bool {
        step_down(&self.coefficients).is_some()
    }

    /// Spectral radius of the companion matrix. Dense eigenvalue solve; meant
    /// for moderate orders.
    pub fn companion_spectral_radius(&self) -> f64 {
        let p = self.order;
        if p == 0 {
            return 0.0;
        }
        let mut m = nalgebra::DMatrix::<f64>::zeros(p, p);
        for (k, phi) in self.coefficients.iter().enumerate() {
            m[(0, k)] = *phi;
        }
        for i in 1..p {
            m[(i, i - 1)] = 1.0;
        }
        m.complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Iterates the fitted recursion `horizon` steps past the end of `history`,
    /// feeding each forecast back in as a lagged value.
    pub fn forecast(&self, history: &[f64], horizon: usize) -> Result<Vec<f64>> {
        if history.len() < self.order {
            return Err(Error::TooShort {
                required: self.order,
                available: history.len(),
            });
        }
        let p = self.order;
        let mut lagged: Vec<f64> = history[history.len() - p..]
            .iter()
            .map(|y| y - self.mean)
            .collect();
        let mut out = Vec::with_capacity(horizon);
        for _ in 0..horizon {
            // lagged is in time order; φ_1 pairs with the newest value
            let dev: f64 = self
                .coefficients
                .iter()
                .zip(lagged.iter().rev())
                .map(|(phi, y)| phi * y)
                .sum();
            out.push(self.mean + dev);
            lagged.push(dev);
        }
        Ok(out)
    }
}

/// Result of a Levinson-Durbin run to order `p`, keeping every intermediate order.
#[derive(Debug, Clone, PartialEq)]
pub struct LevinsonPath {
    /// Reflection (partial autocorrelation) coefficients `κ_1..κ_p`.
    pub reflection: Vec<f64>,
    /// Innovation variances `σ̂²_0..σ̂²_p`, with `σ̂²_0 = γ(0)`.
    pub variances: Vec<f64>,
    /// Coefficients of the order-`p` solution.
    pub coefficients: Vec<f64>,
}

impl LevinsonPath {
    pub fn order(&self) -> usize {
        self.reflection.len()
    }

    /// Coefficients of the order-`m` solution, rebuilt from the reflection coefficients.
    pub fn coefficients_at(&self, m: usize) -> Vec<f64> {
        step_up(&self.reflection[..m.min(self.reflection.len())])
    }

    /// Fit at intermediate order `m` for a series with the given mean and length.
    pub fn fit_at(&self, m: usize, mean: f64, n: usize) -> ArFit {
        let m = m.min(self.order());
        let sigma2 = self.variances[m];
        ArFit {
            mean,
            order: m,
            coefficients: self.coefficients_at(m),
            sigma2,
            aic: ArFit::aic_value(n, sigma2, m),
            n,
        }
    }
}

/// Walks the recursion to `order`, calling `visit(m, φ_m, σ̂²_m)` after each order.
fn scan(
    lags: &[f64],
    order: usize,
    mut visit: impl FnMut(usize, &[f64], f64),
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let g0 = lags[0];
    if g0.is_nan() || g0 <= 0.0 || !g0.is_finite() {
        return Err(Error::ConstantSeries);
    }
    let mut phi = Vec::with_capacity(order);
    let mut prev = Vec::with_capacity(order);
    let mut reflection = Vec::with_capacity(order);
    let mut variances = Vec::with_capacity(order + 1);
    let mut sigma2 = g0;
    variances.push(sigma2);
    for m in 1..=order {
        let acc: f64 = phi
            .iter()
            .zip(lags[1..m].iter().rev())
            .map(|(p, g)| p * g)
            .sum();
        let kappa = (lags[m] - acc) / sigma2;
        let next = sigma2 * (1.0 - kappa * kappa);
        if next.is_nan() || next <= 0.0 || !kappa.is_finite() {
            return Err(Error::NonPositiveVariance { order: m });
        }
        prev.clear();
        prev.extend_from_slice(&phi);
        for k in 0..m - 1 {
            phi[k] = prev[k] - kappa * prev[m - 2 - k];
        }
        phi.push(kappa);
        sigma2 = next;
        reflection.push(kappa);
        variances.push(sigma2);
        visit(m, &phi, sigma2);
    }
    Ok((reflection, variances, phi))
}

/// Solves the order-`p` Yule-Walker system in O(p²).
pub fn levinson_durbin(acov: &Autocovariance, order: usize) -> Result<LevinsonPath> {
    if order == 0 {
        return Err(Error::InvalidArgument("AR order must be at least 1".into()));
    }
    if acov.max_lag() < order {
        return Err(Error::TooShort {
            required: order + 1,
            available: acov.lags.len(),
        });
    }
    let (reflection, variances, coefficients) = scan(&acov.lags, order, |_, _, _| {})?;
    Ok(LevinsonPath {
        reflection,
        variances,
        coefficients,
    })
}

/// Fits AR(p) for every `p` in `1..=p_max` from one set of autocovariances and
/// returns the AIC minimizer; ties go to the smaller order.
pub fn select_order_aic(series: &[f64], p_max: usize) -> Result<ArFit> {
    if p_max == 0 {
        return Err(Error::InvalidArgument("p_max must be at least 1".into()));
    }
    let acov = sample_autocov(series, p_max)?;
    select_from_autocov(&acov, p_max)
}

pub fn select_from_autocov(acov: &Autocovariance, p_max: usize) -> Result<ArFit> {
    let n = acov.n;
    let mut best: Option<ArFit> = None;
    scan(&acov.lags, p_max, |m, phi, sigma2| {
        let aic = ArFit::aic_value(n, sigma2, m);
        if best.as_ref().is_none_or(|b| aic < b.aic) {
            best = Some(ArFit {
                mean: acov.mean,
                order: m,
                coefficients: phi.to_vec(),
                sigma2,
                aic,
                n,
            });
        }
    })?;
    best.ok_or(Error::ConstantSeries)
}

fn step_up(reflection: &[f64]) -> Vec<f64> {
    let mut phi: Vec<f64> = Vec::with_capacity(reflection.len());
    for (m, &kappa) in reflection.iter().enumerate() {
        let prev = phi.clone();
        for k in 0..m {
            phi[k] = prev[k] - kappa * prev[m - 1 - k];
        }
        phi.push(kappa);
    }
    phi
}

/// True if the AR polynomial `1 - Σ φ_k z^k` has all roots outside the unit circle.
pub fn coefficients_are_stationary(coefficients: &[f64]) -> bool {
    step_down(coefficients).is_some()
}

/// Inverse of [`step_up`]; `None` once a reflection coefficient reaches the unit circle.
fn step_down(coefficients: &[f64]) -> Option<Vec<f64>> {
    let mut a = coefficients.to_vec();
    let mut reflection = vec![0.0; a.len()];
    for m in (1..=a.len()).rev() {
        let kappa = a[m - 1];
        if kappa.is_nan() || kappa.abs() >= 1.0 {
            return None;
        }
        reflection[m - 1] = kappa;
        let denom = 1.0 - kappa * kappa;
        let prev: Vec<f64> = a[..m - 1].to_vec();
        for k in 0..m - 1 {
            a[k] = (prev[k] + kappa * prev[m - 2 - k]) / denom;
        }
        a.truncate(m - 1);
    }
    Some(reflection)
}
