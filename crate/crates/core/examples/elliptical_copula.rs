//! Elliptical family: `(U, V) = (X, X sin g + Y cos g)` with `(X, Y)` from
//! the circular copula. Prints the density, CDF and region map on a coarse
//! grid for a few skew angles.
//!
//! ```text
//! cargo run --example elliptical_copula
//! ```

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use spherical_copulas::copula::{elliptical_cdf, elliptical_correlation, elliptical_pdf};
use spherical_copulas::special::classify_region;
use spherical_copulas::GammaParam;

fn main() -> spherical_copulas::Result<()> {
    let axis: Vec<f64> = (0..9).map(|k| -0.96 + 0.24 * k as f64).collect();
    for g in [-FRAC_PI_4, FRAC_PI_8, FRAC_PI_4] {
        let gp = GammaParam::new(g)?;
        println!("gamma = {g:+.4}  correlation = {:.4}", elliptical_correlation(gp));
        println!("  region map (v down, u across)       cdf at u = v");
        for &v in axis.iter().rev() {
            let row: String = axis
                .iter()
                .map(|&u| classify_region(gp, u, v).map(|r| char::from(b'0' + r.index())))
                .collect::<spherical_copulas::Result<_>>()?;
            println!(
                "    {row}   v = {v:+.2}   F = {:.6}   pdf = {:.6}",
                elliptical_cdf(gp, v, v)?,
                elliptical_pdf(gp, v, v)?
            );
        }
        println!();
    }
    Ok(())
}
