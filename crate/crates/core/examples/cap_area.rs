//! Area of the intersection of two spherical caps, and its link to the
//! circular copula: caps of angular radius `acos x`, `acos y` with centers
//! a quarter turn apart overlap in `4 pi` times the joint survival at `(x, y)`.
//!
//! ```text
//! cargo run --example cap_area
//! ```

use std::f64::consts::{FRAC_PI_2, PI};

use spherical_copulas::copula::circular_survival;
use spherical_copulas::special::cap_intersection_area;

fn main() -> spherical_copulas::Result<()> {
    println!(
        "two hemispheres at right angles: {:.15} (pi = {PI:.15})",
        cap_intersection_area(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2)?
    );
    println!("tangent caps: {}", cap_intersection_area(0.5, 0.5, 1.0)?);

    for (x, y) in [(0.3, 0.4), (0.1, 0.1), (0.6, 0.7)] {
        let a = cap_intersection_area(f64::acos(x), f64::acos(y), FRAC_PI_2)?;
        let s = 4.0 * PI * circular_survival(x, y)?;
        println!("({x}, {y}): area {a:.15}  4 pi survival {s:.15}");
    }

    if let Err(e) = cap_intersection_area(0.5, 0.5, 1.5) {
        println!("disjoint caps: {e}");
    }
    Ok(())
}
