#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// AR(p) path of length `n` after a burn-in, unit innovations.
pub fn simulate_ar(phi: &[f64], n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let burn = 500;
    let mut x = vec![0.0; n + burn];
    for t in 0..n + burn {
        let mut v = normal(rng);
        for (k, p) in phi.iter().enumerate() {
            if t > k {
                v += p * x[t - 1 - k];
            }
        }
        x[t] = v;
    }
    x.split_off(burn)
}

/// VAR(1) path `y_t = A y_{t-1} + L e_t` with `L L' = sigma`.
pub fn simulate_var1(
    a: &Matrix2<f64>,
    sigma: &Matrix2<f64>,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<[f64; 2]> {
    let l = sigma.cholesky().expect("positive definite").l();
    let burn = 500;
    let mut y = Vector2::zeros();
    let mut out = Vec::with_capacity(n);
    for t in 0..n + burn {
        let e = Vector2::new(normal(rng), normal(rng));
        y = a * y + l * e;
        if t >= burn {
            out.push([y[0], y[1]]);
        }
    }
    out
}

/// Dense solve of the order-`p` Yule-Walker equations `R φ = r`.
pub fn dense_yule_walker(lags: &[f64], p: usize) -> Vec<f64> {
    let r = DMatrix::from_fn(p, p, |i, j| lags[i.abs_diff(j)]);
    let rhs = DVector::from_fn(p, |i, _| lags[i + 1]);
    let sol = r.lu().solve(&rhs).expect("nonsingular Toeplitz");
    sol.iter().copied().collect()
}

/// `Γ(k)` for any integer `k`, with `Γ(-k) = Γ(k)'`.
pub fn gamma_at(lags: &[Matrix2<f64>], k: isize) -> Matrix2<f64> {
    if k >= 0 {
        lags[k as usize]
    } else {
        lags[(-k) as usize].transpose()
    }
}

/// Dense solve of the bivariate Yule-Walker equations
/// `Γ(k) = Σ_i A_i Γ(k - i)`, `k = 1..p`.
pub fn dense_block_yule_walker(lags: &[Matrix2<f64>], p: usize) -> Vec<Matrix2<f64>> {
    let dim = 2 * p;
    // [A_1 .. A_p] R = [Γ(1) .. Γ(p)] with block (i, k) of R equal to Γ(k - i)
    let mut r = DMatrix::<f64>::zeros(dim, dim);
    let mut rhs = DMatrix::<f64>::zeros(2, dim);
    for i in 0..p {
        for k in 0..p {
            let g = gamma_at(lags, k as isize - i as isize);
            for a in 0..2 {
                for b in 0..2 {
                    r[(2 * i + a, 2 * k + b)] = g[(a, b)];
                }
            }
        }
        let g = lags[i + 1];
        for a in 0..2 {
            for b in 0..2 {
                rhs[(a, 2 * i + b)] = g[(a, b)];
            }
        }
    }
    let x = r
        .transpose()
        .lu()
        .solve(&rhs.transpose())
        .expect("nonsingular block Toeplitz")
        .transpose();
    (0..p)
        .map(|i| {
            Matrix2::new(
                x[(0, 2 * i)],
                x[(0, 2 * i + 1)],
                x[(1, 2 * i)],
                x[(1, 2 * i + 1)],
            )
        })
        .collect()
}

/// Stationary covariance of a VAR(1): solves `Γ0 = A Γ0 A' + Σ` through
/// `(I - A ⊗ A) vec Γ0 = vec Σ`.
pub fn lyapunov(a: &Matrix2<f64>, sigma: &Matrix2<f64>) -> Matrix2<f64> {
    let mut m = DMatrix::<f64>::identity(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    // vec stacks columns: index of (row, col) is col * 2 + row
                    m[(j * 2 + i, l * 2 + k)] -= a[(i, k)] * a[(j, l)];
                }
            }
        }
    }
    let v = DVector::from_column_slice(sigma.as_slice());
    let g = m.lu().solve(&v).expect("stable VAR(1)");
    Matrix2::from_column_slice(g.as_slice())
}

pub fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt();
    let den: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    num / den.max(f64::MIN_POSITIVE)
}

pub fn flatten(ms: &[Matrix2<f64>]) -> Vec<f64> {
    ms.iter().flat_map(|m| m.iter().copied()).collect()
}

/// Random positive definite autocovariance sequence `γ(0..=p)`: a mixture
/// of cosines (each term positive semidefinite) plus a white-noise nugget.
pub fn random_psd_lags(p: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let terms = rng.random_range(1..6);
    let comps: Vec<(f64, f64)> = (0..terms)
        .map(|_| {
            (
                rng.random_range(0.1..3.0),
                rng.random_range(0.0..std::f64::consts::PI),
            )
        })
        .collect();
    let nugget = rng.random_range(0.05..1.0);
    (0..=p)
        .map(|k| {
            let s: f64 = comps.iter().map(|(w, om)| w * (k as f64 * om).cos()).sum();
            if k == 0 {
                s + nugget
            } else {
                s
            }
        })
        .collect()
}

/// Random bivariate series: a random two-dimensional moving average of white noise.
pub fn random_bivariate_series(n: usize, rng: &mut ChaCha8Rng) -> Vec<[f64; 2]> {
    let q = rng.random_range(1..8);
    let theta: Vec<Matrix2<f64>> = (0..=q)
        .map(|_| Matrix2::from_fn(|_, _| rng.random_range(-1.0..1.0)))
        .collect();
    let e: Vec<Vector2<f64>> = (0..n + q)
        .map(|_| Vector2::new(normal(rng), normal(rng)))
        .collect();
    (0..n)
        .map(|t| {
            let y: Vector2<f64> = theta
                .iter()
                .enumerate()
                .map(|(j, th)| th * e[t + q - j])
                .sum();
            [y[0], y[1]]
        })
        .collect()
}
