//! Copula generated by the nonlinear map `(x, y) -> (x/sqrt(1 - y^2), y/sqrt(1 - x^2))`
//! applied to the uniform distribution on the unit disk.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::special::{check_square, clamped_arcsin, one_minus_sq, ARCSIN_TOL};

/// Forward map from the open unit disk to the square.
pub fn nonlinear_forward(x: f64, y: f64) -> Result<(f64, f64)> {
    if !(x * x + y * y < 1.0) {
        return Err(domain("nonlinear_forward", format!("({x}, {y}) not in the open unit disk")));
    }
    let u = x / one_minus_sq(y).sqrt();
    let v = y / one_minus_sq(x).sqrt();
    Ok((u.clamp(-1.0, 1.0), v.clamp(-1.0, 1.0)))
}

/// Inverse of [`nonlinear_forward`]. The four corners are 0/0 and rejected.
pub fn nonlinear_inverse(u: f64, v: f64) -> Result<(f64, f64)> {
    check_square("nonlinear_inverse", u, v)?;
    if u.abs() == 1.0 && v.abs() == 1.0 {
        return Err(domain("nonlinear_inverse", format!("({u}, {v}) is a corner of the square")));
    }
    let w = ((1.0 - u * v) * (1.0 + u * v)).sqrt();
    Ok((u * one_minus_sq(v).sqrt() / w, v * one_minus_sq(u).sqrt() / w))
}

/// `(1/pi) sqrt((1 - u^2)(1 - v^2)) / (1 - u^2 v^2)^2`, taken as 0 on the edges of the square.
pub fn nonlinear_pdf(u: f64, v: f64) -> Result<f64> {
    check_square("nonlinear_pdf", u, v)?;
    if u.abs() == 1.0 || v.abs() == 1.0 {
        return Ok(0.0);
    }
    Ok((one_minus_sq(u) * one_minus_sq(v)).sqrt() / (PI * one_minus_sq_product(u, v).powi(2)))
}

/// `1 - u^2 v^2`, accurate near the corners where `1 - |uv|` is tiny.
fn one_minus_sq_product(u: f64, v: f64) -> f64 {
    let (a, b) = (u.abs(), v.abs());
    ((1.0 - a) + a * (1.0 - b)) * (1.0 + a * b)
}

/// The two arcsine angles `asin(y(u,v))`, `asin(x(u,v))` shared by the area and the CDF.
fn inverse_angles(u: f64, v: f64) -> Result<(f64, f64)> {
    let w = ((1.0 - u * v) * (1.0 + u * v)).sqrt();
    let ay = clamped_arcsin(v * one_minus_sq(u).sqrt() / w, ARCSIN_TOL)?;
    let ax = clamped_arcsin(u * one_minus_sq(v).sqrt() / w, ARCSIN_TOL)?;
    Ok((ay, ax))
}

/// Area of `{x^2/u^2 + y^2 <= 1} ∩ {x^2 + y^2/v^2 <= 1}` for `0 <= u, v <= 1`, `(u, v) != (1, 1)`.
pub fn ellipse_intersection_area(u: f64, v: f64) -> Result<f64> {
    if !((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v)) || (u == 1.0 && v == 1.0) {
        return Err(domain("ellipse_intersection_area", format!("({u}, {v}) not in [0,1]^2 minus (1,1)")));
    }
    let (ay, ax) = inverse_angles(u, v)?;
    Ok(2.0 * u * ay + 2.0 * v * ax)
}

/// CDF of the nonlinear-disk copula.
pub fn nonlinear_cdf(u: f64, v: f64) -> Result<f64> {
    check_square("nonlinear_cdf", u, v)?;
    let base = (u + v + 1.0) / 4.0;
    // Edges (corners included): the closed form's continuous limit is uv/4.
    if u.abs() == 1.0 || v.abs() == 1.0 {
        return Ok((base + u * v / 4.0).clamp(0.0, 1.0));
    }
    let (ay, ax) = inverse_angles(u, v)?;
    Ok((base + (u * ay + v * ax) / (2.0 * PI)).clamp(0.0, 1.0))
}
