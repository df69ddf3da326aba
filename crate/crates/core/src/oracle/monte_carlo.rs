//! Monte-Carlo estimators driven by the exact samplers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::copula::{CopulaModel, CubePoint, PointSampler, Rectangle};
use crate::error::{domain, Error, Result};

/// Smallest sample size accepted by the estimators.
pub const MIN_MC_SAMPLES: usize = 1_000;

/// A proportion estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n: usize,
    pub seed: u64,
}

impl MCEstimate {
    fn from_count(count: usize, n: usize, seed: u64) -> Self {
        let q = count as f64 / n as f64;
        Self { value: q, std_error: (q * (1.0 - q) / n as f64).sqrt(), n, seed }
    }

    /// Standard error the estimate would have if the true proportion were `p`.
    ///
    /// Bands built from this do not collapse when the empirical proportion
    /// happens to be 0 or 1.
    pub fn std_error_at(&self, p: f64) -> f64 {
        (p.clamp(0.0, 1.0) * (1.0 - p.clamp(0.0, 1.0)) / self.n as f64).sqrt()
    }

    /// `|value - p| <= k * std_error_at(p)` with `p = snap_probability(target)`.
    pub fn within(&self, target: f64, k: f64) -> bool {
        let p = snap_probability(target);
        (self.value - p).abs() <= k * self.std_error_at(p)
    }
}

/// Rounding slack of closed-form probabilities that should be exactly 0 or 1.
pub const PROBABILITY_ROUNDOFF: f64 = 1e-12;

/// Moves a closed-form probability lying within [`PROBABILITY_ROUNDOFF`]
/// outside `[0, 1]` onto the nearest end. The Monte-Carlo band has zero width
/// there, so the rounding alone would fail the comparison. Values further out
/// are returned unchanged and fail it.
pub fn snap_probability(p: f64) -> f64 {
    if (-PROBABILITY_ROUNDOFF..0.0).contains(&p) {
        0.0
    } else if p > 1.0 && p <= 1.0 + PROBABILITY_ROUNDOFF {
        1.0
    } else {
        p
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < MIN_MC_SAMPLES {
        return Err(Error::InvalidConfig(format!("Monte-Carlo sample size {n} is below {MIN_MC_SAMPLES}")));
    }
    Ok(())
}

/// Fraction of `n` exact samples lying coordinatewise at or below `p`.
pub fn mc_cdf(model: &CopulaModel, p: &CubePoint, n: usize, seed: u64) -> Result<MCEstimate> {
    check_n(n)?;
    if p.dim() != model.dim() {
        return Err(Error::DimensionMismatch { expected: model.dim(), got: p.dim() });
    }
    let c = p.coords();
    let mut sampler = PointSampler::new(*model, seed);
    let count = (0..n)
        .filter(|_| {
            let z = sampler.next_point();
            c.iter().zip(z).all(|(&ci, zi)| zi <= ci)
        })
        .count();
    Ok(MCEstimate::from_count(count, n, seed))
}

/// Mass of the half-open box `(lower, upper]` from `n` exact samples.
///
/// This is precisely the inclusion–exclusion sum of [`mc_cdf`] over the
/// box corners when every corner uses the same seed, computed in one pass.
pub fn mc_rect_mass(model: &CopulaModel, rect: &Rectangle, n: usize, seed: u64) -> Result<MCEstimate> {
    check_n(n)?;
    if rect.dim() != model.dim() {
        return Err(Error::DimensionMismatch { expected: model.dim(), got: rect.dim() });
    }
    let (lo, hi) = (rect.lower().coords(), rect.upper().coords());
    let mut sampler = PointSampler::new(*model, seed);
    let count = (0..n)
        .filter(|_| {
            let z = sampler.next_point();
            (0..lo.len()).all(|i| lo[i] < z[i] && z[i] <= hi[i])
        })
        .count();
    Ok(MCEstimate::from_count(count, n, seed))
}

/// Area of `{x^2/u^2 + y^2 <= 1} ∩ {x^2 + y^2/v^2 <= 1}` by rejection
/// sampling from the square `[-1, 1]^2`.
///
/// The returned estimate is scaled to area, so `value` and `std_error` are
/// four times the hit proportion and its standard error.
pub fn mc_ellipse_intersection_area(u: f64, v: f64, n: usize, seed: u64) -> Result<MCEstimate> {
    check_n(n)?;
    if !(u > 0.0 && u <= 1.0 && v > 0.0 && v <= 1.0) {
        return Err(domain("mc_ellipse_intersection_area", format!("({u}, {v}) not in (0, 1]^2")));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let count = (0..n)
        .filter(|_| {
            let x: f64 = rng.random_range(-1.0..1.0);
            let y: f64 = rng.random_range(-1.0..1.0);
            (x / u).powi(2) + y * y <= 1.0 && x * x + (y / v).powi(2) <= 1.0
        })
        .count();
    let q = MCEstimate::from_count(count, n, seed);
    Ok(MCEstimate { value: 4.0 * q.value, std_error: 4.0 * q.std_error, ..q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::cdf_volume;
    use crate::special::GammaParam;

    #[test]
    fn upper_corner_is_certain() {
        for m in [CopulaModel::circular(), CopulaModel::spherical(), CopulaModel::nonlinear_disk()] {
            let e = mc_cdf(&m, &CubePoint::upper_corner(m.dim()).unwrap(), 5_000, 1).unwrap();
            assert_eq!(e.value, 1.0);
            assert_eq!(e.std_error, 0.0);
        }
    }

    #[test]
    fn circular_quadrant() {
        let e = mc_cdf(&CopulaModel::circular(), &CubePoint::xy(0.0, 0.0).unwrap(), 1_000_000, 42).unwrap();
        assert!(e.within(0.25, 4.0), "{e:?}");
        let zero = MCEstimate { value: 0.0, std_error: 0.0, n: 1000, seed: 0 };
        assert!(zero.within(-1e-17, 4.0));
        assert!(!zero.within(-1e-9, 4.0));
        let one = MCEstimate { value: 1.0, ..zero };
        assert!(one.within(1.0 + 1e-13, 4.0));
        assert!(!one.within(1.0 + 1e-9, 4.0));
    }

    #[test]
    fn small_n_rejected() {
        assert!(mc_cdf(&CopulaModel::circular(), &CubePoint::xy(0.0, 0.0).unwrap(), 999, 1).is_err());
    }

    #[test]
    fn rect_mass_is_inclusion_exclusion_of_mc_cdf() {
        let m = CopulaModel::spherical();
        let lo = [-0.3, 0.1, -0.5];
        let hi = [0.4, 0.6, 0.2];
        let rect = Rectangle::new(CubePoint::new(&lo).unwrap(), CubePoint::new(&hi).unwrap()).unwrap();
        let (n, seed) = (20_000, 9);
        let mut sum = 0.0;
        for mask in 0..8u32 {
            let c: Vec<f64> = (0..3).map(|i| if mask & (1 << i) != 0 { hi[i] } else { lo[i] }).collect();
            let sign = if (3 - mask.count_ones()) % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * mc_cdf(&m, &CubePoint::new(&c).unwrap(), n, seed).unwrap().value;
        }
        let direct = mc_rect_mass(&m, &rect, n, seed).unwrap();
        assert!((sum - direct.value).abs() < 1e-12);
        let exact = cdf_volume(&m, &rect).unwrap();
        assert!(direct.within(exact, 4.0), "{direct:?} vs {exact}");
    }

    #[test]
    fn elliptical_rect_mass() {
        let m = CopulaModel::elliptical(GammaParam::new(0.6).unwrap());
        let rect = Rectangle::new(CubePoint::xy(-0.2, 0.0).unwrap(), CubePoint::xy(0.7, 0.9).unwrap()).unwrap();
        let e = mc_rect_mass(&m, &rect, 200_000, 3).unwrap();
        assert!(e.within(cdf_volume(&m, &rect).unwrap(), 4.0));
    }

    #[test]
    fn ellipse_area_estimate() {
        let e = mc_ellipse_intersection_area(1.0, 0.5, 200_000, 5).unwrap();
        let exact = std::f64::consts::PI * 0.5;
        assert!((e.value - exact).abs() <= 4.0 * 4.0 * e.std_error_at(exact / 4.0));
        assert!(mc_ellipse_intersection_area(0.0, 0.5, 2_000, 5).is_err());
    }
}
