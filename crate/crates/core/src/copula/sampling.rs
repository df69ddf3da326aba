//! Exact samplers. Every model is drawn from a polar representation, never by
//! rejection, so a batch of `n` points consumes exactly `2n` uniforms.
//!
//! * circular: angle uniform, radius `R = sqrt(1 - W^2)` with `W` uniform on
//!   `[0, 1)`, the inverse of `P(R <= r) = 1 - sqrt(1 - r^2)`;
//! * spherical: height `Z` uniform on `[-1, 1]`, angle uniform (Archimedes);
//! * elliptical: a circular draw pushed through `(x, x sin g + y cos g)`;
//! * nonlinear disk: a uniform-disk draw (`R = sqrt(W)`) pushed through
//!   [`nonlinear_forward`](super::nonlinear_forward).

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::{CopulaKind, CopulaModel};
use crate::error::{Error, Result};
use crate::special::one_minus_sq;

/// Name of the generator recorded with every batch.
pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha 0.9, seed_from_u64)";

/// Streaming sampler for one model and one seed.
#[derive(Debug, Clone)]
pub struct PointSampler {
    model: CopulaModel,
    rng: ChaCha20Rng,
}

impl PointSampler {
    pub fn new(model: CopulaModel, seed: u64) -> Self {
        Self { model, rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    pub fn model(&self) -> &CopulaModel {
        &self.model
    }

    /// Next point; only the first `model.dim()` coordinates are meaningful.
    pub fn next_point(&mut self) -> [f64; 3] {
        match self.model.kind() {
            CopulaKind::Circular => {
                let (x, y) = self.circular();
                [x, y, 0.0]
            }
            CopulaKind::Spherical => {
                let z = 2.0 * self.rng.random::<f64>() - 1.0;
                let th = TAU * self.rng.random::<f64>();
                let rho = one_minus_sq(z).sqrt();
                [rho * th.cos(), rho * th.sin(), z]
            }
            CopulaKind::Elliptical(g) => {
                let (x, y) = self.circular();
                [x, (x * g.sin() + y * g.cos()).clamp(-1.0, 1.0), 0.0]
            }
            CopulaKind::NonlinearDisk => {
                let r = self.rng.random::<f64>().sqrt();
                let th = TAU * self.rng.random::<f64>();
                let (x, y) = (r * th.cos(), r * th.sin());
                // r < 1, so neither square root below vanishes.
                let u = (x / one_minus_sq(y).sqrt()).clamp(-1.0, 1.0);
                let v = (y / one_minus_sq(x).sqrt()).clamp(-1.0, 1.0);
                [u, v, 0.0]
            }
        }
    }

    fn circular(&mut self) -> (f64, f64) {
        let w = self.rng.random::<f64>();
        let th = TAU * self.rng.random::<f64>();
        let r = one_minus_sq(w).sqrt();
        (r * th.cos(), r * th.sin())
    }
}

/// `n` samples in row-major order together with the model and seed that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub model: CopulaModel,
    pub seed: u64,
    pub rng_algorithm: &'static str,
    points: Vec<f64>,
}

impl SampleBatch {
    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.dim())
    }

    /// Column `axis` as an owned vector.
    pub fn column(&self, axis: usize) -> Vec<f64> {
        self.rows().map(|r| r[axis]).collect()
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.points
    }
}

/// Draw `n >= 1` exact samples from `model` with a deterministic seed.
pub fn sample(model: &CopulaModel, n: usize, seed: u64) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::InvalidConfig("sample size must be at least 1".into()));
    }
    let dim = model.dim();
    let mut sampler = PointSampler::new(*model, seed);
    let mut points = Vec::with_capacity(n * dim);
    for _ in 0..n {
        points.extend_from_slice(&sampler.next_point()[..dim]);
    }
    Ok(SampleBatch { model: *model, seed, rng_algorithm: RNG_ALGORITHM, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::CubePoint;
    use crate::special::GammaParam;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn same_seed_same_batch() {
        let m = CopulaModel::elliptical(GammaParam::new(0.4).unwrap());
        let a = sample(&m, 1000, 7).unwrap();
        let b = sample(&m, 1000, 7).unwrap();
        assert_eq!(a, b);
        let c = sample(&m, 1000, 8).unwrap();
        assert_ne!(a.as_flat(), c.as_flat());
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(sample(&CopulaModel::circular(), 0, 1).is_err());
    }

    #[test]
    fn rows_lie_in_support() {
        let models = [
            CopulaModel::circular(),
            CopulaModel::spherical(),
            CopulaModel::elliptical(GammaParam::new(FRAC_PI_4).unwrap()),
            CopulaModel::elliptical(GammaParam::new(-1.4).unwrap()),
            CopulaModel::nonlinear_disk(),
        ];
        for m in models {
            let batch = sample(&m, 20_000, 11).unwrap();
            assert_eq!(batch.len(), 20_000);
            for row in batch.rows() {
                let p = CubePoint::new(row).unwrap();
                assert!(m.in_support(&p, 1e-12), "{m}: {row:?}");
            }
        }
    }

    /// Histogram of the circular radius against `P(R <= r) = 1 - sqrt(1 - r^2)`,
    /// the law obtained by integrating `2 pi r g(r^2)` with `g(s) = 1/(2 pi sqrt(1 - s))`.
    #[test]
    fn circular_radius_law() {
        let n = 200_000;
        let batch = sample(&CopulaModel::circular(), n, 3).unwrap();
        let edges = [0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.99];
        for r in edges {
            let count = batch.rows().filter(|p| (p[0] * p[0] + p[1] * p[1]).sqrt() <= r).count();
            let q = count as f64 / n as f64;
            let p = 1.0 - (1.0 - r * r).sqrt();
            let se = (p * (1.0 - p) / n as f64).sqrt();
            assert!((q - p).abs() <= 4.0 * se, "r = {r}: {q} vs {p}");
        }
    }
}
