//! Bivariate Yule-Walker estimation by Whittle's order recursion.
//!
//! Forward model `y_t = Σ A_i y_{t-i} + e_t` and backward model
//! `y_t = Σ B_i y_{t+i} + u_t` are grown together one lag at a time, so an
//! order-p fit costs O(p²) 2×2 matrix products.

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};

use super::autocov::{sample_autocov_bivariate, BivariateAutocovariance};

/// A fitted bivariate VAR(p): `Y_t = μ + Σ Φ_k (Y_{t-k} - μ) + ε_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct VarFit {
    pub mean: [f64; 2],
    pub order: usize,
    pub coefficients: Vec<Matrix2<f64>>,
    pub sigma: Matrix2<f64>,
    pub aic: f64,
    pub n: usize,
}

impl VarFit {
    /// `n log det Σ̂ + 2 (4p + 2)`.
    pub fn aic_value(n: usize, sigma: &Matrix2<f64>, order: usize) -> f64 {
        n as f64 * sigma.determinant().ln() + 2.0 * (4.0 * order as f64 + 2.0)
    }

    /// Spectral radius of the 2p×2p companion matrix (dense eigenvalue solve).
    pub fn companion_spectral_radius(&self) -> f64 {
        let p = self.order;
        if p == 0 {
            return 0.0;
        }
        let dim = 2 * p;
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        for (k, phi) in self.coefficients.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, 2 * k + j)] = phi[(i, j)];
                }
            }
        }
        for i in 2..dim {
            m[(i, i - 2)] = 1.0;
        }
        m.complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_stationary(&self) -> bool {
        self.companion_spectral_radius() < 1.0
    }
}

/// Forward coefficients and innovation covariance at one order of the recursion.
pub struct WhittleStep<'a> {
    pub order: usize,
    pub coefficients: &'a [Matrix2<f64>],
    pub sigma: &'a Matrix2<f64>,
}

fn is_positive_definite(m: &Matrix2<f64>) -> bool {
    m[(0, 0)] > 0.0 && m.determinant() > 0.0 && m.iter().all(|v| v.is_finite())
}

/// Runs the recursion to `order`, calling `visit` after every order.
/// Returns the final forward coefficients and innovation covariance.
pub fn whittle_scan(
    acov: &BivariateAutocovariance,
    order: usize,
    mut visit: impl FnMut(WhittleStep<'_>),
) -> Result<(Vec<Matrix2<f64>>, Matrix2<f64>)> {
    if order == 0 {
        return Err(Error::InvalidArgument(
            "VAR order must be at least 1".into(),
        ));
    }
    if acov.max_lag() < order {
        return Err(Error::TooShort {
            required: order + 1,
            available: acov.lags.len(),
        });
    }
    let g = &acov.lags;
    if !is_positive_definite(&g[0]) {
        return Err(Error::SingularCovariance);
    }
    let mut fwd: Vec<Matrix2<f64>> = Vec::with_capacity(order);
    let mut bwd: Vec<Matrix2<f64>> = Vec::with_capacity(order);
    let mut v_fwd = g[0];
    let mut v_bwd = g[0];
    for m in 0..order {
        // Δ = Γ(m+1) - Σ_{i=1..m} A_i Γ(m+1-i)
        let mut delta = g[m + 1];
        for (i, a) in fwd.iter().enumerate() {
            delta -= a * g[m - i];
        }
        let v_bwd_inv = v_bwd
            .try_inverse()
            .ok_or(Error::NonPositiveVariance { order: m + 1 })?;
        let v_fwd_inv = v_fwd
            .try_inverse()
            .ok_or(Error::NonPositiveVariance { order: m + 1 })?;
        let a_new = delta * v_bwd_inv;
        let b_new = delta.transpose() * v_fwd_inv;

        let prev_fwd = fwd.clone();
        for i in 0..m {
            fwd[i] -= a_new * bwd[m - 1 - i];
        }
        for i in 0..m {
            bwd[i] -= b_new * prev_fwd[m - 1 - i];
        }
        fwd.push(a_new);
        bwd.push(b_new);

        v_fwd -= a_new * delta.transpose();
        v_bwd -= b_new * delta;
        // restore exact symmetry lost to rounding
        v_fwd = (v_fwd + v_fwd.transpose()) * 0.5;
        v_bwd = (v_bwd + v_bwd.transpose()) * 0.5;
        if !is_positive_definite(&v_fwd) || !is_positive_definite(&v_bwd) {
            return Err(Error::NonPositiveVariance { order: m + 1 });
        }
        visit(WhittleStep {
            order: m + 1,
            coefficients: &fwd,
            sigma: &v_fwd,
        });
    }
    Ok((fwd, v_fwd))
}

/// Order-`p` bivariate Yule-Walker solution together with the innovation
/// covariance of every intermediate order.
#[derive(Debug, Clone, PartialEq)]
pub struct WhittlePath {
    pub coefficients: Vec<Matrix2<f64>>,
    /// `Σ̂_1..Σ̂_p`.
    pub sigmas: Vec<Matrix2<f64>>,
}

pub fn whittle(acov: &BivariateAutocovariance, order: usize) -> Result<WhittlePath> {
    let mut sigmas = Vec::with_capacity(order);
    let (coefficients, _) = whittle_scan(acov, order, |s| sigmas.push(*s.sigma))?;
    Ok(WhittlePath {
        coefficients,
        sigmas,
    })
}

/// Fits VAR(p) for `p` in `1..=p_max` and returns the AIC minimizer; ties go to the smaller order.
pub fn select_var_order_aic(series: &[[f64; 2]], p_max: usize) -> Result<VarFit> {
    if p_max == 0 {
        return Err(Error::InvalidArgument("p_max must be at least 1".into()));
    }
    let acov = sample_autocov_bivariate(series, p_max)?;
    select_var_from_autocov(&acov, p_max)
}

pub fn select_var_from_autocov(acov: &BivariateAutocovariance, p_max: usize) -> Result<VarFit> {
    let n = acov.n;
    let mut best: Option<VarFit> = None;
    whittle_scan(acov, p_max, |step| {
        let aic = VarFit::aic_value(n, step.sigma, step.order);
        if best.as_ref().is_none_or(|b| aic < b.aic) {
            best = Some(VarFit {
                mean: acov.mean,
                order: step.order,
                coefficients: step.coefficients.to_vec(),
                sigma: *step.sigma,
                aic,
                n,
            });
        }
    })?;
    best.ok_or(Error::SingularCovariance)
}
