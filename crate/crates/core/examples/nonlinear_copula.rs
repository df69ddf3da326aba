//! Copula of the uniform disk pushed through
//! `(x, y) -> (x/sqrt(1 - y^2), y/sqrt(1 - x^2))`.
//!
//! ```text
//! cargo run --example nonlinear_copula
//! ```

use spherical_copulas::copula::{
    ellipse_intersection_area, nonlinear_cdf, nonlinear_forward, nonlinear_inverse, nonlinear_pdf,
};
use spherical_copulas::oracle::{mc_ellipse_intersection_area, quad_mass_2d, QuadratureSpec};
use spherical_copulas::{CopulaModel, Rectangle};

fn main() -> spherical_copulas::Result<()> {
    let (x, y) = (0.4, -0.7);
    let (u, v) = nonlinear_forward(x, y)?;
    let back = nonlinear_inverse(u, v)?;
    println!("forward({x}, {y}) = ({u:.12}, {v:.12}), inverse = ({:.12}, {:.12})", back.0, back.1);

    for (u, v) in [(0.0, 0.0), (0.5, 0.5), (-0.3, 0.8), (0.95, 0.95)] {
        println!("({u:>5}, {v:>5}): pdf {:.8}  cdf {:.8}", nonlinear_pdf(u, v)?, nonlinear_cdf(u, v)?);
    }

    let area = ellipse_intersection_area(0.5, 0.5)?;
    let mc = mc_ellipse_intersection_area(0.5, 0.5, 2_000_000, 11)?;
    println!("ellipse intersection area (0.5, 0.5): {area:.10}, Monte Carlo {:.5} ± {:.5}", mc.value, mc.std_error);

    let mass = quad_mass_2d(&CopulaModel::nonlinear_disk(), &Rectangle::full(2)?, &QuadratureSpec::default())?;
    println!("total mass by quadrature: {mass:.14}");
    Ok(())
}
