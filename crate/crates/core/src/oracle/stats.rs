//! Kolmogorov–Smirnov statistic against uniform[-1, 1] and sample moments.

use serde::{Deserialize, Serialize};

use crate::copula::SampleBatch;
use crate::error::{domain, Error, Result};

/// Asymptotic two-sided KS critical value at level 0.01.
pub fn ks_critical_value(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

/// Two-sided KS distance between the empirical CDF of `samples` and the
/// uniform[-1, 1] CDF `(t + 1)/2`.
pub fn ks_uniform(samples: &[f64]) -> Result<f64> {
    if samples.len() < 100 {
        return Err(Error::InvalidConfig(format!("KS needs at least 100 samples, got {}", samples.len())));
    }
    if let Some(t) = samples.iter().find(|t| !(t.abs() <= 1.0)) {
        return Err(domain("ks_uniform", format!("sample {t} not in [-1, 1]")));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let d = sorted.iter().enumerate().fold(0.0f64, |d, (i, &t)| {
        let f = (t + 1.0) / 2.0;
        d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n)
    });
    Ok(d)
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub value: f64,
    pub std_error: f64,
}

impl MomentEstimate {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        let (mut n, mut mean, mut m2) = (0.0, 0.0, 0.0);
        for x in values {
            n += 1.0;
            let d = x - mean;
            mean += d / n;
            m2 += d * (x - mean);
        }
        let var = if n > 1.0 { m2 / (n - 1.0) } else { 0.0 };
        Self { value: mean, std_error: (var / n).sqrt() }
    }

    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.std_error
    }
}

/// Empirical `E(Z_i^2)` per coordinate. Uniform[-1, 1] marginals put every
/// target at 1/3.
pub fn moment_check(batch: &SampleBatch) -> Result<Vec<MomentEstimate>> {
    if batch.is_empty() {
        return Err(Error::InvalidConfig("moment check on an empty batch".into()));
    }
    Ok((0..batch.dim()).map(|i| MomentEstimate::of(batch.rows().map(|r| r[i] * r[i]))).collect())
}

/// Empirical `E(Z_i Z_j)`.
pub fn mean_product(batch: &SampleBatch, i: usize, j: usize) -> Result<MomentEstimate> {
    if batch.is_empty() || i >= batch.dim() || j >= batch.dim() {
        return Err(Error::InvalidConfig(format!("no coordinates ({i}, {j}) in a non-empty {}-d batch", batch.dim())));
    }
    Ok(MomentEstimate::of(batch.rows().map(|r| r[i] * r[j])))
}

/// Sample Pearson correlation of coordinates `i` and `j`.
pub fn pearson_correlation(batch: &SampleBatch, i: usize, j: usize) -> Result<f64> {
    if batch.len() < 2 || i >= batch.dim() || j >= batch.dim() {
        return Err(Error::InvalidConfig("correlation needs two coordinates and two rows".into()));
    }
    let n = batch.len() as f64;
    let (mx, my) = batch.rows().fold((0.0, 0.0), |(a, b), r| (a + r[i], b + r[j]));
    let (mx, my) = (mx / n, my / n);
    let (sxy, sxx, syy) = batch.rows().fold((0.0, 0.0, 0.0), |(xy, xx, yy), r| {
        let (dx, dy) = (r[i] - mx, r[j] - my);
        (xy + dx * dy, xx + dx * dx, yy + dy * dy)
    });
    Ok(sxy / (sxx * syy).sqrt())
}

/// Four-sigma half-width for a sample correlation near `rho`, using the
/// large-sample standard error `(1 - rho^2)/sqrt(n)`.
pub fn correlation_band(rho: f64, n: usize) -> f64 {
    4.0 * (1.0 - rho * rho) / (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::{sample, CopulaModel};
    use crate::special::GammaParam;
    use rand::{Rng, SeedableRng};

    #[test]
    fn ks_perfect_grid() {
        let n = 1000;
        let grid: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * (i as f64 + 0.5) / n as f64).collect();
        assert!(ks_uniform(&grid).unwrap() <= 1.0 / n as f64);
    }

    #[test]
    fn ks_input_checks() {
        assert!(ks_uniform(&[0.0; 99]).is_err());
        assert!(ks_uniform(&[1.5; 200]).is_err());
        assert!((ks_uniform(&[-1.0; 200]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn circular_marginals_pass_disk_fails() {
        let n = 200_000;
        let batch = sample(&CopulaModel::circular(), n, 17).unwrap();
        for axis in 0..2 {
            assert!(ks_uniform(&batch.column(axis)).unwrap() <= ks_critical_value(n));
        }
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(17);
        let disk: Vec<f64> = (0..n)
            .map(|_| {
                let r = rng.random::<f64>().sqrt();
                r * (std::f64::consts::TAU * rng.random::<f64>()).cos()
            })
            .collect();
        assert!(ks_uniform(&disk).unwrap() > ks_critical_value(n));
    }

    #[test]
    fn moments_and_correlation() {
        let g = GammaParam::new(std::f64::consts::FRAC_PI_4).unwrap();
        let n = 200_000;
        let batch = sample(&CopulaModel::elliptical(g), n, 5).unwrap();
        for m in moment_check(&batch).unwrap() {
            assert!(m.within(1.0 / 3.0, 4.0), "{m:?}");
        }
        let r = pearson_correlation(&batch, 0, 1).unwrap();
        assert!((r - g.sin()).abs() <= correlation_band(g.sin(), n));
        let nl = sample(&CopulaModel::nonlinear_disk(), n, 5).unwrap();
        assert!(mean_product(&nl, 0, 1).unwrap().within(0.0, 4.0));
    }
}
