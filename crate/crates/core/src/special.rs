//! Scalar helpers shared by every copula: the sign function, the guarded
//! arcsine, the correction terms `alpha`, `alpha_gamma` and `delta3`, the
//! spherical-cap intersection area, the elliptical region partition and the
//! constant-valued `h` identity.
//!
//! All functions are pure. Arguments of every `asin`/`acos` go through
//! [`clamped_arcsin`] with tolerance [`ARCSIN_TOL`], so quotients that land a
//! few ulps past `±1` on a support boundary are clamped while real domain
//! violations are still reported.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Error, Result};

/// Slack allowed past `±1` before an arcsine argument is treated as a domain error.
pub const ARCSIN_TOL: f64 = 1e-12;

const TWO_PI: f64 = 2.0 * PI;

/// Result of [`sigma`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }
}

/// Sign of `w`, with `sigma(0) = 0` (both zeros map to [`Sign::Zero`]).
pub fn sigma(w: f64) -> Sign {
    if w > 0.0 {
        Sign::Positive
    } else if w < 0.0 {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

/// `asin(t)` after clamping `t` into `[-1, 1]`.
///
/// Fails when `|t| > 1 + tol` or `t` is NaN: that is a violated precondition
/// upstream, not round-off.
pub fn clamped_arcsin(t: f64, tol: f64) -> Result<f64> {
    if !(t.abs() <= 1.0 + tol) {
        return Err(domain("clamped_arcsin", format!("|t| = {t} exceeds 1 + {tol:e}")));
    }
    Ok(t.clamp(-1.0, 1.0).asin())
}

fn asin_g(t: f64) -> Result<f64> {
    clamped_arcsin(t, ARCSIN_TOL)
}

fn acos_g(t: f64) -> Result<f64> {
    Ok(FRAC_PI_2 - asin_g(t)?)
}

/// `1 - x^2`, factored to keep precision near `|x| = 1`.
#[inline]
pub(crate) fn one_minus_sq(x: f64) -> f64 {
    (1.0 - x) * (1.0 + x)
}

pub(crate) fn check_square(func: &'static str, x: f64, y: f64) -> Result<()> {
    if x.abs() <= 1.0 && y.abs() <= 1.0 {
        Ok(())
    } else {
        Err(domain(func, format!("({x}, {y}) is not in [-1, 1]^2")))
    }
}

/// Correction term of the circular copula: `F(x, y) = (x + y + 1)/4 + alpha(x, y)`.
///
/// Inside the unit disk this is the three-arcsine expression of
/// [`alpha_interior`]; on and outside the unit circle it is the linear form
/// `sigma(xy) (|x| + |y| - 1)/4`. The function is odd in each argument.
pub fn alpha(x: f64, y: f64) -> Result<f64> {
    check_square("alpha", x, y)?;
    // |x| = 1 or |y| = 1 always lands here, before the 0/0 in the interior form.
    if x * x + y * y >= 1.0 {
        return Ok(sigma(x * y).as_f64() * (x.abs() + y.abs() - 1.0) / 4.0);
    }
    alpha_interior(x, y)
}

/// The three-arcsine branch of [`alpha`], evaluated without dispatching on the radius.
///
/// Requires `|x| < 1`, `|y| < 1` and `x^2 + y^2 <= 1` up to [`ARCSIN_TOL`]; used
/// directly to probe continuity at the unit circle.
pub fn alpha_interior(x: f64, y: f64) -> Result<f64> {
    if !(x.abs() < 1.0 && y.abs() < 1.0) {
        return Err(domain("alpha_interior", format!("({x}, {y}) needs |x| < 1 and |y| < 1")));
    }
    let sx = one_minus_sq(x).sqrt();
    let sy = one_minus_sq(y).sqrt();
    let t1 = asin_g(y / sx)?;
    let t2 = asin_g(x / sy)?;
    let t3 = asin_g(x * y / (sx * sy))?;
    Ok((x * t1 + y * t2 - t3) / TWO_PI)
}

/// `alpha(x,y) + alpha(x,z) + alpha(y,z)`, always summed in that order.
pub fn delta3(x: f64, y: f64, z: f64) -> Result<f64> {
    Ok(alpha(x, y)? + alpha(x, z)? + alpha(y, z)?)
}

/// Skew angle of the elliptical copula family, restricted to `(-pi/2, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParam {
    gamma: f64,
    sin: f64,
    cos: f64,
}

impl GammaParam {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.abs() < FRAC_PI_2) {
            return Err(Error::InvalidGamma(gamma));
        }
        Ok(Self { gamma, sin: gamma.sin(), cos: gamma.cos() })
    }

    pub fn value(&self) -> f64 {
        self.gamma
    }

    pub fn sin(&self) -> f64 {
        self.sin
    }

    pub fn cos(&self) -> f64 {
        self.cos
    }

    /// Whether `(u, v)` lies in the closed support ellipse
    /// `u^2 + v^2 - 2uv sin(gamma) <= cos^2(gamma)`.
    pub fn in_ellipse(&self, u: f64, v: f64) -> bool {
        self.ellipse_gap(u, v) >= 0.0
    }

    /// `cos^2(gamma) - u^2 - v^2 + 2uv sin(gamma)`, written as
    /// `cos^2(gamma)(1 - u^2) - (v - u sin(gamma))^2` for accuracy near the boundary.
    pub(crate) fn ellipse_gap(&self, u: f64, v: f64) -> f64 {
        let w = v - u * self.sin;
        self.cos * self.cos * one_minus_sq(u) - w * w
    }
}

/// Cell of the partition of `[-1, 1]^2` used by the elliptical copula.
///
/// `R1`..`R4` are the quadrants of the support ellipse, `R5`..`R8` the four
/// corner pieces outside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
}

impl RegionId {
    pub fn index(self) -> u8 {
        match self {
            RegionId::R1 => 1,
            RegionId::R2 => 2,
            RegionId::R3 => 3,
            RegionId::R4 => 4,
            RegionId::R5 => 5,
            RegionId::R6 => 6,
            RegionId::R7 => 7,
            RegionId::R8 => 8,
        }
    }
}

/// Locate `(u, v)` in the eight-cell partition. Boundary points of the
/// ellipse count as inside it; on the axes the non-negative side wins.
pub fn classify_region(g: GammaParam, u: f64, v: f64) -> Result<RegionId> {
    check_square("classify_region", u, v)?;
    if g.in_ellipse(u, v) {
        return Ok(match (u >= 0.0, v >= 0.0) {
            (true, true) => RegionId::R1,
            (false, true) => RegionId::R2,
            (true, false) => RegionId::R3,
            (false, false) => RegionId::R4,
        });
    }
    // At most one margin is positive anywhere in the square; the argmax also
    // settles points that round to "outside" right next to a tangent point.
    let s = g.sin();
    let margins = [
        (u + v - (1.0 + s), RegionId::R5),
        (v - u - (1.0 - s), RegionId::R6),
        ((s - 1.0) - (v - u), RegionId::R7),
        ((-1.0 - s) - (u + v), RegionId::R8),
    ];
    let best = margins.iter().copied().fold(margins[0], |best, m| if m.0 > best.0 { m } else { best });
    Ok(best.1)
}

/// Correction term of the elliptical copula: `F_gamma(u, v) = (u + v + 1)/4 + alpha_gamma(u, v)`.
///
/// Reduces to [`alpha`] at `gamma = 0`. Even under `(u, v) -> (-u, -v)`.
pub fn alpha_gamma(g: GammaParam, u: f64, v: f64) -> Result<f64> {
    check_square("alpha_gamma", u, v)?;
    // On the square's edges uniform marginals pin the value; the ellipse
    // formula is 0/0 at its tangent points (+-1, +-sin gamma).
    if u.abs() == 1.0 || v.abs() == 1.0 {
        return Ok(u * v / 4.0);
    }
    match classify_region(g, u, v)? {
        RegionId::R1 | RegionId::R2 | RegionId::R3 | RegionId::R4 => alpha_gamma_interior(g, u, v),
        RegionId::R5 => Ok((u + v - 1.0) / 4.0),
        RegionId::R6 => Ok((u - v + 1.0) / 4.0),
        RegionId::R7 => Ok((-u + v + 1.0) / 4.0),
        RegionId::R8 => Ok((-u - v - 1.0) / 4.0),
    }
}

// The three arguments below are <= 1 exactly on the closed ellipse, but near
// the tangent points they are ratios of small quantities and lose a few digits.
const ELLIPSE_ARCSIN_TOL: f64 = 1e-9;

fn alpha_gamma_interior(g: GammaParam, u: f64, v: f64) -> Result<f64> {
    let (s, c) = (g.sin(), g.cos());
    let su = one_minus_sq(u).sqrt();
    let sv = one_minus_sq(v).sqrt();
    let t1 = clamped_arcsin((v - u * s) / (c * su), ELLIPSE_ARCSIN_TOL)?;
    let t2 = clamped_arcsin((u - v * s) / (c * sv), ELLIPSE_ARCSIN_TOL)?;
    let t3 = clamped_arcsin((u * v - s) / (su * sv), ELLIPSE_ARCSIN_TOL)?;
    Ok((u * t1 + v * t2 - t3) / TWO_PI)
}

/// Area of the intersection of two caps on the unit sphere with angular radii
/// `r1`, `r2` whose centres are `d` apart.
///
/// Only the single-diangle configuration is accepted:
/// `0 < r1, r2 <= pi/2`, `0 < d <= pi` and `|r1 - r2| < d <= r1 + r2`.
/// Nested or disjoint caps are rejected.
pub fn cap_intersection_area(r1: f64, r2: f64, d: f64) -> Result<f64> {
    let bad = |reason| Error::CapConfiguration { r1, r2, d, reason };
    if !(r1.is_finite() && r2.is_finite() && d.is_finite()) {
        return Err(bad("non-finite angle"));
    }
    if !(r1 > 0.0 && r1 <= FRAC_PI_2 && r2 > 0.0 && r2 <= FRAC_PI_2) {
        return Err(bad("cap radii must lie in (0, pi/2]"));
    }
    if !(d > 0.0 && d <= PI) {
        return Err(bad("centre distance must lie in (0, pi]"));
    }
    if d > (r1 + r2) * (1.0 + 4.0 * f64::EPSILON) {
        return Err(bad("caps are disjoint (d > r1 + r2)"));
    }
    if d <= (r1 - r2).abs() {
        return Err(bad("one cap contains the other (d <= |r1 - r2|)"));
    }
    let (c1, c2, cd) = (r1.cos(), r2.cos(), d.cos());
    let (s1, s2, sd) = (r1.sin(), r2.sin(), d.sin());
    let dihedral = acos_g((cd - c1 * c2) / (s1 * s2))?;
    let w1 = acos_g((cd * c1 - c2) / (sd * s1))?;
    let w2 = acos_g((cd * c2 - c1) / (sd * s2))?;
    let area = TWO_PI * (1.0 - c1 - c2) - 2.0 * dihedral + 2.0 * c1 * w1 + 2.0 * c2 * w2;
    Ok(area.max(0.0))
}

/// Three-arcsine sum that is identically `pi/2` on the open quarter disk
/// minus the origin. Kept so the identity can be checked numerically.
///
/// The terms are `asin(xy / sqrt((1-x^2)(1-y^2)))`,
/// `asin(x w / (sqrt(1-x^2) r))` and `asin(y w / (sqrt(1-y^2) r))` with
/// `w = sqrt(1 - r^2)`. Each is evaluated as `atan2(sin, cos)` with its
/// exact cosine (`w`, `y`, `x` over the same denominators), because the
/// arguments approach 1 on the axes where a plain `asin` loses half the
/// digits.
pub fn h_identity(x: f64, y: f64) -> Result<f64> {
    let r2 = x * x + y * y;
    if !(x >= 0.0 && y >= 0.0 && r2 < 1.0 && r2 > 0.0) {
        return Err(domain("h_identity", format!("({x}, {y}) outside the open quarter disk minus origin")));
    }
    let w = (1.0 - r2).sqrt();
    Ok((x * y).atan2(w) + (x * w).atan2(y) + (y * w).atan2(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    // Reference values from 30-digit adaptive quadrature of the one-dimensional
    // survival integral and of the conditional-arcsine representation of F_gamma,
    // computed outside this crate.
    const FBAR_03_04: f64 = 0.094_975_342_664_564_66;
    const F_GAMMA_PI4_01_02: f64 = 0.450_520_708_126_427_15;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(3.7), Sign::Positive);
        assert_eq!(sigma(0.0), Sign::Zero);
        assert_eq!(sigma(-0.0), Sign::Zero);
        assert_eq!(sigma(-0.2).value(), -1);
    }

    #[test]
    fn clamped_arcsin_examples() {
        assert_eq!(clamped_arcsin(1.0 + 1e-13, 1e-12).unwrap(), FRAC_PI_2);
        assert_eq!(clamped_arcsin(0.0, 1e-12).unwrap(), 0.0);
        assert!(clamped_arcsin(1.01, 1e-12).is_err());
        assert!(clamped_arcsin(f64::NAN, 1e-12).is_err());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(0.0, 0.5).unwrap(), 0.0);
        assert_eq!(alpha(1.0, 1.0).unwrap(), 0.25);
        let expected = FBAR_03_04 - (1.0 - 0.3 - 0.4) / 4.0;
        assert!((alpha(0.3, 0.4).unwrap() - expected).abs() < 1e-15);
        assert!(alpha(1.2, 0.0).is_err());
    }

    #[test]
    fn alpha_on_unit_edge_is_quarter_x() {
        for i in 0..=200 {
            let x = -1.0 + i as f64 / 100.0;
            assert!((alpha(x, 1.0).unwrap() - x / 4.0).abs() < 1e-12);
            assert!((alpha(x, -1.0).unwrap() + x / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn alpha_continuous_across_unit_circle() {
        for k in 0..200 {
            let th = (k as f64 + 0.5) * FRAC_PI_2 / 200.0;
            let (x, y) = (th.cos(), th.sin());
            let outer = (x + y - 1.0) / 4.0;
            let r = 1.0 - 1e-10;
            let inner = alpha_interior(r * x, r * y).unwrap();
            assert!((inner - outer).abs() < 1e-8, "theta {th}: {inner} vs {outer}");
        }
    }

    #[test]
    fn delta3_examples() {
        assert_eq!(delta3(0.0, 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(delta3(1.0, 1.0, 1.0).unwrap(), 0.75);
        let base = delta3(0.2, 0.3, 0.4).unwrap();
        for (a, b, c) in [(0.2, 0.4, 0.3), (0.3, 0.2, 0.4), (0.3, 0.4, 0.2), (0.4, 0.2, 0.3), (0.4, 0.3, 0.2)] {
            assert!((delta3(a, b, c).unwrap() - base).abs() < 1e-15);
        }
    }

    #[test]
    fn gamma_param_bounds() {
        assert!(GammaParam::new(FRAC_PI_2).is_err());
        assert!(GammaParam::new(-FRAC_PI_2).is_err());
        assert!(GammaParam::new(f64::NAN).is_err());
        assert!(GammaParam::new(1.5).is_ok());
    }

    #[test]
    fn alpha_gamma_examples() {
        let g0 = GammaParam::new(0.0).unwrap();
        assert_eq!(alpha_gamma(g0, 0.3, 0.4).unwrap(), alpha(0.3, 0.4).unwrap());

        let g8 = GammaParam::new(FRAC_PI_8).unwrap();
        let (u, v) = (0.99, 0.98);
        assert!(u + v > 1.0 + g8.sin() && !g8.in_ellipse(u, v));
        assert_eq!(alpha_gamma(g8, u, v).unwrap(), (u + v - 1.0) / 4.0);

        let g4 = GammaParam::new(FRAC_PI_4).unwrap();
        let expected = F_GAMMA_PI4_01_02 - (0.1 + 0.2 + 1.0) / 4.0;
        assert!((alpha_gamma(g4, 0.1, 0.2).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn alpha_gamma_matches_alpha_at_zero_skew() {
        let g0 = GammaParam::new(0.0).unwrap();
        for i in 0..41 {
            for j in 0..41 {
                let x = -1.0 + i as f64 / 20.0;
                let y = -1.0 + j as f64 / 20.0;
                let d = (alpha_gamma(g0, x, y).unwrap() - alpha(x, y).unwrap()).abs();
                assert!(d < 1e-12, "({x}, {y}): {d}");
            }
        }
    }

    #[test]
    fn alpha_gamma_agrees_across_ellipse_boundary() {
        for gamma in [-1.2, -FRAC_PI_4, FRAC_PI_8, 0.9] {
            let g = GammaParam::new(gamma).unwrap();
            for k in 1..100 {
                let u = -1.0 + k as f64 / 50.0;
                for sgn in [-1.0, 1.0] {
                    let v = u * g.sin() + sgn * g.cos() * one_minus_sq(u).sqrt();
                    let inside = alpha_gamma_interior(g, u, v).unwrap();
                    let outside = match classify_region(g, u * 1.000001, v * 1.000001) {
                        Ok(RegionId::R5) => (u + v - 1.0) / 4.0,
                        Ok(RegionId::R6) => (u - v + 1.0) / 4.0,
                        Ok(RegionId::R7) => (-u + v + 1.0) / 4.0,
                        Ok(RegionId::R8) => (-u - v - 1.0) / 4.0,
                        other => panic!("expected a corner region, got {other:?}"),
                    };
                    assert!((inside - outside).abs() < 1e-6, "gamma {gamma} ({u}, {v})");
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let g0 = GammaParam::new(0.0).unwrap();
        assert_eq!(classify_region(g0, 0.5, 0.5).unwrap(), RegionId::R1);
        assert_eq!(classify_region(g0, -0.99, 0.99).unwrap(), RegionId::R6);
        assert_eq!(classify_region(g0, 0.6, 0.8).unwrap(), RegionId::R1);
        let g8 = GammaParam::new(FRAC_PI_8).unwrap();
        assert_eq!(classify_region(g8, 0.99, 0.99).unwrap(), RegionId::R5);
        assert_eq!(classify_region(g8, 0.99, -0.99).unwrap(), RegionId::R7);
        assert_eq!(classify_region(g8, -0.99, -0.99).unwrap(), RegionId::R8);
        assert_eq!(classify_region(g8, -0.2, -0.3).unwrap(), RegionId::R4);
        assert!(classify_region(g8, 1.5, 0.0).is_err());
    }

    #[test]
    fn cap_area_examples() {
        let a = cap_intersection_area(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((a - PI).abs() < 1e-12);
        assert!(cap_intersection_area(0.5, 0.5, 1.0).unwrap().abs() < 1e-12);
        assert!(cap_intersection_area(0.3, 0.7, 1.0).unwrap().abs() < 1e-12);
        let a = cap_intersection_area(0.3f64.acos(), 0.4f64.acos(), FRAC_PI_2).unwrap();
        assert!((a - 4.0 * PI * FBAR_03_04).abs() < 1e-12);
    }

    #[test]
    fn cap_area_rejects_other_configurations() {
        assert!(matches!(cap_intersection_area(0.5, 0.5, 1.2), Err(Error::CapConfiguration { .. })));
        assert!(cap_intersection_area(1.0, 0.2, 0.5).is_err());
        assert!(cap_intersection_area(0.0, 0.2, 0.1).is_err());
        assert!(cap_intersection_area(1.7, 1.0, 1.0).is_err());
    }

    #[test]
    fn cap_area_tilted_axes_match_alpha_gamma() {
        // Caps {X > u} and {X sin g + Y cos g > v} have axes pi/2 - g apart.
        for gamma in [-0.6, 0.2, FRAC_PI_4] {
            let g = GammaParam::new(gamma).unwrap();
            for (u, v) in [(0.1, 0.2), (0.3, 0.5), (0.05, 0.6)] {
                if !g.in_ellipse(u, v) {
                    continue;
                }
                let area = cap_intersection_area(f64::acos(u), f64::acos(v), FRAC_PI_2 - gamma).unwrap();
                let expected = (1.0 - u - v) * PI + 4.0 * PI * alpha_gamma(g, u, v).unwrap();
                assert!((area - expected).abs() < 1e-12, "gamma {gamma} ({u},{v})");
            }
        }
    }

    #[test]
    fn h_identity_examples() {
        for (x, y) in [(0.3, 0.4), (0.7, 0.1), (0.0001, 0.0001), (0.04, 0.0), (0.0, 0.999), (0.6, 0.799)] {
            assert!((h_identity(x, y).unwrap() - FRAC_PI_2).abs() < 1e-12);
        }
        assert!(h_identity(0.0, 0.0).is_err());
        assert!(h_identity(0.8, 0.8).is_err());
        assert!(h_identity(-0.1, 0.2).is_err());
    }

    #[test]
    fn arcsin_complement() {
        for k in 0..=100 {
            let th = k as f64 * FRAC_PI_2 / 100.0;
            let (a, b) = (th.cos(), th.sin());
            let s = clamped_arcsin(a, ARCSIN_TOL).unwrap() + clamped_arcsin(b, ARCSIN_TOL).unwrap();
            assert!((s - FRAC_PI_2).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn alpha_sign_change_equivariance(x in -1.0f64..=1.0, y in -1.0f64..=1.0,
                                          e in prop::bool::ANY, d in prop::bool::ANY) {
            let (e, d) = (if e { 1.0 } else { -1.0 }, if d { 1.0 } else { -1.0 });
            let lhs = alpha(e * x, d * y).unwrap();
            let rhs = e * d * alpha(x, y).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn alpha_gamma_skew_reflection(gamma in -1.5f64..1.5, u in -1.0f64..=1.0, v in -1.0f64..=1.0) {
            let g = GammaParam::new(gamma).unwrap();
            let neg = GammaParam::new(-gamma).unwrap();
            let lhs = alpha_gamma(neg, -u, v).unwrap();
            prop_assert!((lhs + alpha_gamma(g, u, v).unwrap()).abs() < 1e-12);
        }

        #[test]
        fn cap_area_symmetric(r1 in 0.05f64..FRAC_PI_2, r2 in 0.05f64..FRAC_PI_2, t in 0.01f64..0.99) {
            let lo = (r1 - r2).abs();
            let hi = (r1 + r2).min(PI);
            let d = lo + t * (hi - lo);
            prop_assume!(d > lo);
            let a = cap_intersection_area(r1, r2, d).unwrap();
            let b = cap_intersection_area(r2, r1, d).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
            prop_assert!((0.0..=2.0 * PI).contains(&a));
        }
    }
}
