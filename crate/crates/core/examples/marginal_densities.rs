//! The two one-dimensional laws behind the constructions: the X-coordinate
//! of a uniform point on the disk (a semicircle law) and on the sphere
//! (uniform). Prints both densities and the disk CDF next to the uniform one.
//!
//! ```text
//! cargo run --example marginal_densities
//! ```

use spherical_copulas::copula::{marginal_pdf_circle, marginal_pdf_disk};
use spherical_copulas::oracle::{integrate, QuadratureSpec};

fn main() -> spherical_copulas::Result<()> {
    let spec = QuadratureSpec::default();
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "x", "disk pdf", "circle pdf", "disk cdf", "uniform cdf");
    // The circle density blows up at the ends, so stay inside.
    for k in 0..=10 {
        let x = -0.95 + 0.19 * k as f64;
        let cdf = integrate(|t| marginal_pdf_disk(t).unwrap_or(0.0), -1.0, x, &spec)?;
        println!(
            "{x:>6.2} {:>12.8} {:>12.8} {cdf:>12.8} {:>12.8}",
            marginal_pdf_disk(x)?,
            marginal_pdf_circle(x)?,
            (x + 1.0) / 2.0
        );
    }
    Ok(())
}
