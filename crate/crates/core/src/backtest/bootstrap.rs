use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Statistic recomputed on each bootstrap resample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BootstrapMetric {
    /// Mean of the losses (MAE when the losses are absolute errors).
    Mean,
    /// Square root of the mean (RMSE when the losses are squared errors).
    RootMean,
}

impl BootstrapMetric {
    fn apply(self, mean: f64) -> f64 {
        match self {
            BootstrapMetric::Mean => mean,
            BootstrapMetric::RootMean => mean.sqrt(),
        }
    }
}

/// Standard deviation of `metric` over `replicates` i.i.d. resamples of `losses`.
///
/// Replicate `i` draws from its own ChaCha stream `i` under `seed`, so the
/// result is independent of how replicates are scheduled across threads.
pub fn bootstrap_sd(losses: &[f64], metric: BootstrapMetric, replicates: usize, seed: u64) -> f64 {
    let n = losses.len();
    if n == 0 || replicates < 2 {
        return 0.0;
    }
    let stats: Vec<f64> = (0..replicates)
        .into_par_iter()
        .map(|i| {
            let mut rng = replicate_rng(seed, i);
            let sum: f64 = (0..n).map(|_| losses[rng.random_range(0..n)]).sum();
            metric.apply(sum / n as f64)
        })
        .collect();
    sample_sd(&stats)
}

/// Bootstrap SDs of MAE and RMSE of `errors`, both computed on the same
/// resamples that [`bootstrap_sd`] would draw for `seed`.
pub fn bootstrap_error_sds(errors: &[f64], replicates: usize, seed: u64) -> (f64, f64) {
    let n = errors.len();
    if n == 0 || replicates < 2 {
        return (0.0, 0.0);
    }
    let stats: Vec<(f64, f64)> = (0..replicates)
        .into_par_iter()
        .map(|i| {
            let mut rng = replicate_rng(seed, i);
            let (mut abs, mut sq) = (0.0, 0.0);
            for _ in 0..n {
                let e = errors[rng.random_range(0..n)];
                abs += e.abs();
                sq += e * e;
            }
            (abs / n as f64, (sq / n as f64).sqrt())
        })
        .collect();
    let mae: Vec<f64> = stats.iter().map(|s| s.0).collect();
    let rmse: Vec<f64> = stats.iter().map(|s| s.1).collect();
    (sample_sd(&mae), sample_sd(&rmse))
}

fn replicate_rng(seed: u64, replicate: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate as u64);
    rng
}

fn sample_sd(stats: &[f64]) -> f64 {
    let replicates = stats.len();
    // shifted two-pass variance: identical replicates give exactly zero
    let pivot = stats[0];
    let (s, s2) = stats.iter().fold((0.0, 0.0), |(s, s2), x| {
        let d = x - pivot;
        (s + d, s2 + d * d)
    });
    let b = replicates as f64;
    ((s2 - s * s / b) / (b - 1.0)).max(0.0).sqrt()
}

/// Mixes a master seed with a tag (splitmix64 finalizer).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
