//! Trivariate spherical copula: a uniform point on the unit sphere. Its
//! mass lives on the sphere, so it has a CDF but no density.
//!
//! ```text
//! cargo run --example spherical_copula
//! ```

use spherical_copulas::oracle::{mc_cdf, quad_survival_spherical, QuadratureSpec};
use spherical_copulas::{CopulaModel, CubePoint, Error};

fn main() -> spherical_copulas::Result<()> {
    let m = CopulaModel::spherical();
    let (circ, p) = (CopulaModel::circular(), CubePoint::xyz(0.2, 0.3, 0.4)?);

    let cdf = m.cdf(&p)?;
    let mc = mc_cdf(&m, &p, 1_000_000, 7)?;
    println!("F(0.2, 0.3, 0.4) = {cdf:.10}  (Monte Carlo {:.6} ± {:.6})", mc.value, mc.std_error);

    let s = m.survival(&p)?;
    let q = quad_survival_spherical(0.2, 0.3, 0.4, &QuadratureSpec::default())?;
    println!("survival           = {s:.15}  (quadrature {q:.15})");

    // Setting a coordinate to 1 recovers the circular copula.
    let margin = m.cdf(&CubePoint::xyz(0.2, 0.3, 1.0)?)?;
    println!("F(0.2, 0.3, 1)     = {margin:.15}  circular F(0.2, 0.3) = {:.15}", circ.cdf(&CubePoint::xy(0.2, 0.3)?)?);

    match m.pdf(&p) {
        Err(e @ Error::NotAbsolutelyContinuous { .. }) => println!("pdf: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    // Uniform marginals force E(Z_i^2) = 1/3, which a ball in d >= 4 cannot reach.
    if let Err(e) = CopulaModel::spherically_symmetric(4) {
        println!("d = 4: {e}");
    }
    Ok(())
}
