//! The spherical copula on `[-1, 1]^3`: the CDF of the uniform distribution on
//! the unit sphere, the only spherically symmetric law on the ball with
//! uniform marginals.

use crate::error::{domain, Result};
use crate::special::{delta3, sigma};

fn check_cube(func: &'static str, x: f64, y: f64, z: f64) -> Result<()> {
    if x.abs() <= 1.0 && y.abs() <= 1.0 && z.abs() <= 1.0 {
        Ok(())
    } else {
        Err(domain(func, format!("({x}, {y}, {z}) is not in [-1, 1]^3")))
    }
}

/// `P[X <= x, Y <= y, Z <= z]` for `(X, Y, Z)` uniform on the unit sphere.
pub fn spherical_cdf(x: f64, y: f64, z: f64) -> Result<f64> {
    check_cube("spherical_cdf", x, y, z)?;
    let mut f = (1.0 + x + y + z) / 8.0 + delta3(x, y, z)? / 2.0;
    if x * x + y * y + z * z >= 1.0 {
        let (ax, ay, az) = (x.abs(), y.abs(), z.abs());
        let octant = (1.0 - ax - ay - az) / 8.0 + delta3(ax, ay, az)? / 2.0;
        f += sigma(x * y * z).as_f64() * octant;
    }
    Ok(f.clamp(0.0, 1.0))
}

/// `P[X > x, Y > y, Z > z]` on the first octant `0 <= x, y, z <= 1`.
///
/// Other orthants are answered by [`crate::copula::CopulaModel::survival`],
/// which goes through the CDF by inclusion–exclusion.
pub fn spherical_survival(x: f64, y: f64, z: f64) -> Result<f64> {
    if !(x >= 0.0 && y >= 0.0 && z >= 0.0 && x <= 1.0 && y <= 1.0 && z <= 1.0) {
        return Err(domain("spherical_survival", format!("({x}, {y}, {z}) is not in [0, 1]^3")));
    }
    if x * x + y * y + z * z >= 1.0 {
        return Ok(0.0);
    }
    Ok(((1.0 - x - y - z) / 8.0 + delta3(x, y, z)? / 2.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::circular::circular_cdf;

    // 30-digit quadrature of the one-dimensional survival integral, computed outside this crate.
    const FBAR_02_03_04: f64 = 0.033_967_720_551_638_21;

    #[test]
    fn cdf_examples() {
        assert_eq!(spherical_cdf(0.0, 0.0, 0.0).unwrap(), 0.125);
        assert_eq!(spherical_cdf(1.0, 1.0, 1.0).unwrap(), 1.0);
        assert_eq!(spherical_cdf(-1.0, 0.3, 0.2).unwrap(), 0.0);
        assert!(spherical_cdf(0.0, 0.0, 1.2).is_err());
    }

    #[test]
    fn margin_collapses_to_circular() {
        for i in 0..41 {
            for j in 0..41 {
                let x = -1.0 + i as f64 / 20.0;
                let y = -1.0 + j as f64 / 20.0;
                let d = (spherical_cdf(x, y, 1.0).unwrap() - circular_cdf(x, y).unwrap()).abs();
                assert!(d <= 1e-12, "({x}, {y}): {d}");
            }
        }
    }

    #[test]
    fn uniform_one_dimensional_margins() {
        for i in 0..=40 {
            let t = -1.0 + i as f64 / 20.0;
            for p in [[t, 1.0, 1.0], [1.0, t, 1.0], [1.0, 1.0, t]] {
                assert!((spherical_cdf(p[0], p[1], p[2]).unwrap() - (t + 1.0) / 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn survival_examples() {
        assert_eq!(spherical_survival(0.0, 0.0, 0.0).unwrap(), 0.125);
        assert_eq!(spherical_survival(0.6, 0.6, 0.6).unwrap(), 0.0);
        assert!((spherical_survival(0.2, 0.3, 0.4).unwrap() - FBAR_02_03_04).abs() < 1e-15);
        assert!(spherical_survival(-0.1, 0.3, 0.4).is_err());
    }

    #[test]
    fn survival_is_reflected_cdf() {
        for p in [[0.2, 0.3, 0.4], [0.7, 0.1, 0.5], [0.0, 0.9, 0.3]] {
            let s = spherical_survival(p[0], p[1], p[2]).unwrap();
            let f = spherical_cdf(-p[0], -p[1], -p[2]).unwrap();
            assert!((s - f).abs() < 1e-14);
        }
    }
}
