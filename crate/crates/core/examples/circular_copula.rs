//! Circular copula: the law of the first two coordinates of a uniform point
//! on the sphere, rescaled so each margin is uniform on [-1, 1].
//!
//! ```text
//! cargo run --example circular_copula
//! ```

use spherical_copulas::copula::{circular_cdf, circular_pdf, circular_survival};
use spherical_copulas::oracle::{quad_survival_circular, QuadratureSpec};
use spherical_copulas::special::alpha;

fn main() -> spherical_copulas::Result<()> {
    println!("{:>6} {:>6} {:>12} {:>12} {:>12} {:>12}", "x", "y", "pdf", "cdf", "survival", "alpha");
    for (x, y) in [(0.0, 0.0), (0.3, 0.4), (-0.5, 0.5), (0.6, 0.8), (0.9, -0.9), (1.0, 0.2)] {
        println!(
            "{x:>6} {y:>6} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            circular_pdf(x, y)?,
            circular_cdf(x, y)?,
            circular_survival(x, y)?,
            alpha(x, y)?
        );
    }

    // The closed form against the one-dimensional integral it was derived from.
    let spec = QuadratureSpec::default();
    let (x, y) = (0.3, 0.4);
    let closed = circular_survival(x, y)?;
    let quad = quad_survival_circular(x, y, &spec)?;
    println!(
        "\nsurvival({x}, {y}): closed form {closed:.15}, quadrature {quad:.15}, diff {:.1e}",
        (closed - quad).abs()
    );
    Ok(())
}
