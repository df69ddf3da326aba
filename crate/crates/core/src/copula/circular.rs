//! The unique circularly symmetric law on the unit disk with uniform[-1,1]
//! marginals: density `1/(2 pi sqrt(1 - x^2 - y^2))`, i.e. the (X, Y)
//! projection of the uniform distribution on the unit sphere.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::special::{alpha, check_square, one_minus_sq};

/// Semicircle density `(2/pi) sqrt(1 - x^2)`: the marginal of the uniform law on the disk.
pub fn marginal_pdf_disk(x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return Err(domain("marginal_pdf_disk", format!("{x} not in [-1, 1]")));
    }
    Ok(2.0 / PI * one_minus_sq(x).sqrt())
}

/// Arcsine density `1/(pi sqrt(1 - x^2))`: the marginal of the uniform law on the circle.
/// Unbounded at `±1`, which are rejected.
pub fn marginal_pdf_circle(x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(domain("marginal_pdf_circle", format!("{x} not in (-1, 1)")));
    }
    Ok(1.0 / (PI * one_minus_sq(x).sqrt()))
}

/// Density of the circular copula. Zero on and outside the unit circle.
pub fn circular_pdf(x: f64, y: f64) -> Result<f64> {
    check_square("circular_pdf", x, y)?;
    let gap = one_minus_sq(x) - y * y;
    Ok(if gap > 0.0 { 1.0 / (2.0 * PI * gap.sqrt()) } else { 0.0 })
}

/// `P[X <= x, Y <= y] = (x + y + 1)/4 + alpha(x, y)`.
pub fn circular_cdf(x: f64, y: f64) -> Result<f64> {
    check_square("circular_cdf", x, y)?;
    Ok(((x + y + 1.0) / 4.0 + alpha(x, y)?).clamp(0.0, 1.0))
}

/// `P[X > x, Y > y]`, computed as `circular_cdf(-x, -y)` by sign symmetry.
pub fn circular_survival(x: f64, y: f64) -> Result<f64> {
    check_square("circular_survival", x, y)?;
    circular_cdf(-x, -y)
}
