//! Elliptical copulas: the law of `(X, X sin g + Y cos g)` for `(X, Y)` circular.
//! The support is the ellipse `u^2 + v^2 - 2uv sin g <= cos^2 g`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::special::{alpha_gamma, check_square, GammaParam};

/// Density of the elliptical copula; zero on and outside the support ellipse.
pub fn elliptical_pdf(g: GammaParam, u: f64, v: f64) -> Result<f64> {
    check_square("elliptical_pdf", u, v)?;
    let gap = g.ellipse_gap(u, v);
    Ok(if gap > 0.0 { 1.0 / (2.0 * PI * gap.sqrt()) } else { 0.0 })
}

/// `F_gamma(u, v) = (u + v + 1)/4 + alpha_gamma(u, v)`.
pub fn elliptical_cdf(g: GammaParam, u: f64, v: f64) -> Result<f64> {
    check_square("elliptical_cdf", u, v)?;
    Ok(((u + v + 1.0) / 4.0 + alpha_gamma(g, u, v)?).clamp(0.0, 1.0))
}

/// Pearson correlation of the two coordinates, `sin(gamma)`.
pub fn elliptical_correlation(g: GammaParam) -> f64 {
    g.sin()
}
