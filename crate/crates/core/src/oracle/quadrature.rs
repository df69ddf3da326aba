//! Adaptive one-dimensional quadrature and the integral oracles built on it.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use crate::copula::{CopulaKind, CopulaModel, Rectangle};
use crate::error::{domain, Error, Result};
use crate::special::one_minus_sq;

/// Panel rule used by the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadRule {
    /// Gauss–Legendre with the given number of nodes (at least 16).
    GaussLegendre(usize),
    AdaptiveSimpson,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    /// Budget of panel evaluations for one integral.
    pub max_subdivisions: usize,
    pub rule: QuadRule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-9, max_subdivisions: 1 << 20, rule: QuadRule::GaussLegendre(64) }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidConfig(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if self.max_subdivisions < 3 {
            return Err(Error::InvalidConfig("max_subdivisions must be at least 3".into()));
        }
        if let QuadRule::GaussLegendre(n) = self.rule {
            if n < 16 {
                return Err(Error::InvalidConfig(format!("Gauss-Legendre order {n} is below 16")));
            }
        }
        Ok(())
    }

    fn with_tol(&self, abs_tol: f64) -> Self {
        Self { abs_tol, ..*self }
    }
}

/// Nodes and weights on `[-1, 1]`.
struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    fn shared(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(n).or_insert_with(|| Arc::new(GaussRule::new(n))).clone()
    }

    /// Rule estimate and the same sum over `|f|`, used for the roundoff floor.
    fn apply<F: FnMut(f64) -> f64>(&self, f: &mut F, a: f64, b: f64) -> (f64, f64) {
        let (c, h) = ((a + b) / 2.0, (b - a) / 2.0);
        let (mut sum, mut abs) = (0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let y = f(c + h * x);
            sum += w * y;
            abs += w * y.abs();
        }
        (sum * h, abs * h.abs())
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

fn simpson<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let h = (b - a) / 6.0;
    (h * (fa + 4.0 * fm + fb), h.abs() * (fa.abs() + 4.0 * fm.abs() + fb.abs()))
}

/// A panel evaluated on its two halves.
struct Panel {
    lo: f64,
    hi: f64,
    halves: [f64; 2],
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// `int_a^b f` to `spec.abs_tol` by globally adaptive bisection.
///
/// Each panel's error is the gap between the rule on the whole panel and on
/// its two halves; the panel with the largest error is split until the
/// errors sum to at most `abs_tol`. Gaps at the level of floating-point
/// roundoff count as zero, so sharp but integrable peaks do not exhaust the
/// budget chasing noise.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(domain("integrate", format!("limits [{a}, {b}] are not finite")));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, spec).map(|v| -v);
    }
    let (gauss, richardson) = match spec.rule {
        QuadRule::GaussLegendre(n) => (Some(GaussRule::shared(n)), 1.0),
        QuadRule::AdaptiveSimpson => (None, 15.0),
    };
    let evals = std::cell::Cell::new(0usize);
    let mut rule = |lo: f64, hi: f64| {
        evals.set(evals.get() + 1);
        match &gauss {
            Some(g) => g.apply(&mut f, lo, hi),
            None => simpson(&mut f, lo, hi),
        }
    };
    let panel = |rule: &mut dyn FnMut(f64, f64) -> (f64, f64), lo: f64, hi: f64, whole: f64| {
        let mid = 0.5 * (lo + hi);
        let (l, la) = rule(lo, mid);
        let (r, ra) = rule(mid, hi);
        let mut err = (l + r - whole).abs() / richardson;
        if err <= 50.0 * f64::EPSILON * (la + ra) {
            err = 0.0;
        }
        Panel { lo, hi, halves: [l, r], err }
    };
    let (whole, _) = rule(a, b);
    let first = panel(&mut rule, a, b, whole);
    let mut total_err = first.err;
    let mut heap = std::collections::BinaryHeap::from([first]);
    loop {
        if total_err <= spec.abs_tol {
            // The running sum drifts; confirm against a fresh one.
            total_err = heap.iter().map(|p| p.err).sum();
            if total_err <= spec.abs_tol {
                return Ok(heap.iter().map(|p| p.halves[0] + p.halves[1]).sum());
            }
        }
        let worst = heap.peek().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if evals.get() + 4 > spec.max_subdivisions || !(worst.lo < mid && mid < worst.hi) {
            return Err(Error::Convergence {
                abs_tol: spec.abs_tol,
                max_evaluations: spec.max_subdivisions,
                estimate: heap.iter().map(|p| p.halves[0] + p.halves[1]).sum(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let left = panel(&mut rule, worst.lo, mid, worst.halves[0]);
        let right = panel(&mut rule, mid, worst.hi, worst.halves[1]);
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
}

/// [`integrate`] after the substitution `s = a + (b - a)(1 - cos t)/2`, `t` in `[0, pi]`.
///
/// The Jacobian vanishes at both ends, which turns square-root endpoint
/// behaviour of `f` into a smooth integrand and keeps every evaluation
/// strictly inside `(a, b)`.
pub fn integrate_smoothed<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_smoothed_gaps(|s, _, _| f(s), a, b, spec)
}

/// Like [`integrate_smoothed`], but `f` also receives the distances
/// `s - a` and `b - s`, each accurate to full relative precision near its
/// own endpoint, where recomputing them from `s` would cancel.
///
/// The substitution is split at `t = pi/2` and the upper half is run from
/// `b` downwards, so both endpoints sit at `t = 0` of their own half.
pub fn integrate_smoothed_gaps<F: FnMut(f64, f64, f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return smoothed_gaps(&mut |s, lo, hi| f(s, hi, lo), b, a, spec).map(|v| -v);
    }
    smoothed_gaps(&mut f, a, b, spec)
}

fn smoothed_gaps(f: &mut dyn FnMut(f64, f64, f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (len, half) = (b - a, 0.5 * (b - a));
    let half_spec = spec.with_tol(spec.abs_tol / 2.0);
    let near = |t: f64| {
        let st = (0.5 * t).sin();
        (2.0 * half * st * st).min(len)
    };
    let lower = integrate(
        |t| {
            let g = near(t);
            f((a + g).min(b), g, len - g) * half * t.sin()
        },
        0.0,
        FRAC_PI_2,
        &half_spec,
    )?;
    let upper = integrate(
        |t| {
            let g = near(t);
            f((b - g).max(a), len - g, g) * half * t.sin()
        },
        0.0,
        FRAC_PI_2,
        &half_spec,
    )?;
    Ok(lower + upper)
}

/// `asin(num/den)` for a ratio that is at most one analytically.
fn asin_ratio(num: f64, den: f64) -> f64 {
    if den <= 0.0 {
        return FRAC_PI_2.copysign(num);
    }
    (num / den).clamp(-1.0, 1.0).asin()
}

/// Joint survival of the circular copula as a one-dimensional integral:
/// `(1/2 pi) int_x^sqrt(1-y^2) [pi/2 - asin(y/sqrt(1 - s^2))] ds`.
pub fn quad_survival_circular(x: f64, y: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y) && x * x + y * y < 1.0) {
        return Err(domain("quad_survival_circular", format!("({x}, {y}) not in the open first-quadrant disk")));
    }
    let top = one_minus_sq(y).sqrt();
    if x >= top {
        return Ok(0.0);
    }
    // 1 - s^2 = y^2 + (top - s)(top + s), exact at the upper limit.
    let v =
        integrate_smoothed_gaps(|s, _, gap| FRAC_PI_2 - asin_ratio(y, (y * y + gap * (top + s)).sqrt()), x, top, spec)?;
    Ok(v / (2.0 * PI))
}

fn survival_spherical_once(x: f64, y: f64, z: f64, spec: &QuadratureSpec) -> Result<f64> {
    let top = (one_minus_sq(y) - z * z).max(0.0).sqrt();
    if x >= top {
        return Ok(0.0);
    }
    let v = integrate_smoothed_gaps(
        |s, _, gap| {
            let rho = (y * y + z * z + gap * (top + s)).sqrt();
            FRAC_PI_2 - asin_ratio(y, rho) - asin_ratio(z, rho)
        },
        x,
        top,
        spec,
    )?;
    Ok(v / (4.0 * PI))
}

/// Joint survival of the spherical copula on the first octant as a
/// one-dimensional integral:
/// `(1/4 pi) int_x^sqrt(1-y^2-z^2) [pi/2 - asin(y/sqrt(1-s^2)) - asin(z/sqrt(1-s^2))] ds`.
///
/// The integral is evaluated for all six orderings of `(x, y, z)`; the
/// results must agree within `10 * abs_tol` or
/// [`Error::PermutationDisagreement`] is returned. The value for the given
/// ordering is returned.
pub fn quad_survival_spherical(x: f64, y: f64, z: f64, spec: &QuadratureSpec) -> Result<f64> {
    let ok = |t: f64| (0.0..=1.0).contains(&t);
    if !(ok(x) && ok(y) && ok(z) && x * x + y * y + z * z < 1.0) {
        return Err(domain("quad_survival_spherical", format!("({x}, {y}, {z}) not in the open first-octant ball")));
    }
    let orders = [[x, y, z], [x, z, y], [y, x, z], [y, z, x], [z, x, y], [z, y, x]];
    let mut values = [0.0; 6];
    for (v, p) in values.iter_mut().zip(orders) {
        *v = survival_spherical_once(p[0], p[1], p[2], spec)?;
    }
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    if hi - lo > 10.0 * spec.abs_tol {
        return Err(Error::PermutationDisagreement { values: values.to_vec() });
    }
    Ok(values[0])
}

/// Distance from `s` in `[lo, hi]` to the nearest edge of `[-1, 1]`, given the
/// accurate gaps `s - lo` and `hi - s`.
fn edge_distance(lo: f64, hi: f64, gap_lo: f64, gap_hi: f64) -> f64 {
    ((1.0 - hi) + gap_hi).min((1.0 + lo) + gap_lo)
}

/// Nonlinear-disk density written in the edge distances `p = 1 - |u|`,
/// `q = 1 - |v|`, which keeps the corner peaks resolvable.
fn nonlinear_density_at_edges(p: f64, q: f64) -> f64 {
    if p <= 0.0 || q <= 0.0 {
        return 0.0;
    }
    let inner = p + q - p * q; // 1 - |uv|
    let w = inner * (2.0 - inner); // 1 - u^2 v^2
    (p * (2.0 - p) * q * (2.0 - q)).sqrt() / (PI * w * w)
}

/// Probability mass of `rect` under a model with a Lebesgue density, by
/// iterated quadrature of the density.
///
/// For the circular and elliptical models the inner integral over `v` runs
/// along the support chord `v = u sin(g) + cos(g) sqrt(1 - u^2) sin(phi)`,
/// which cancels the inverse-square-root blow-up at the ellipse. The outer
/// integral is split where the chord ends cross the rectangle. The
/// nonlinear-disk density, whose only singularities are the four corners,
/// is integrated directly with endpoint smoothing in both variables.
pub fn quad_mass_2d(model: &CopulaModel, rect: &Rectangle, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    if matches!(model.kind(), CopulaKind::Spherical) {
        return Err(Error::UnsupportedModel("spherical copula has no Lebesgue density to integrate".into()));
    }
    if rect.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: rect.dim() });
    }
    let (lo, hi) = (rect.lower().coords(), rect.upper().coords());
    let (u0, u1, v0, v1) = (lo[0], hi[0], lo[1], hi[1]);
    if u0 == u1 || v0 == v1 {
        return Ok(0.0);
    }
    // Outer error accumulates inner errors over a range of length <= 2.
    let inner_spec = spec.with_tol(spec.abs_tol / 4.0);
    let outer_spec = spec.with_tol(spec.abs_tol / 2.0);
    // First failure of an inner integral; later outer nodes then skip work.
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let failed = || failure.borrow().is_some();
    let record = |r: Result<f64>| {
        r.unwrap_or_else(|e| {
            failure.borrow_mut().get_or_insert(e);
            0.0
        })
    };
    let total = match model.kind() {
        CopulaKind::NonlinearDisk => integrate_smoothed_gaps(
            |_, gu_lo, gu_hi| {
                if failed() {
                    return 0.0;
                }
                let p = edge_distance(u0, u1, gu_lo, gu_hi);
                record(integrate_smoothed_gaps(
                    |_, gv_lo, gv_hi| nonlinear_density_at_edges(p, edge_distance(v0, v1, gv_lo, gv_hi)),
                    v0,
                    v1,
                    &inner_spec,
                ))
            },
            u0,
            u1,
            &outer_spec,
        )?,
        _ => {
            let (s, c) = model.gamma().map_or((0.0, 1.0), |g| (g.sin(), g.cos()));
            let inner = |u: f64| -> f64 {
                let m = u * s;
                let h = c * one_minus_sq(u).sqrt();
                if failed() || !(m - h < v1 && v0 < m + h) || h <= 0.0 {
                    return 0.0;
                }
                // A chord end inside the rectangle maps to exactly -+pi/2; recomputing it
                // through asin would turn an ulp of rounding into a sqrt-sized error.
                let pa = if m - h >= v0 { -FRAC_PI_2 } else { asin_ratio(v0 - m, h) };
                let pb = if m + h <= v1 { FRAC_PI_2 } else { asin_ratio(v1 - m, h) };
                record(integrate(
                    |phi| {
                        let v = (m + h * phi.sin()).clamp(-1.0, 1.0);
                        model.pdf_unchecked(u, v) * h * phi.cos()
                    },
                    pa,
                    pb,
                    &inner_spec,
                ))
            };
            // Where the chord ends cross v = v0 or v = v1.
            let mut cuts = vec![u0, u1];
            for t in [v0, v1] {
                let r = c * one_minus_sq(t).sqrt();
                for p in [t * s - r, t * s + r] {
                    if u0 < p && p < u1 {
                        cuts.push(p);
                    }
                }
            }
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let mut total = 0.0;
            let piece_spec = outer_spec.with_tol(outer_spec.abs_tol / (cuts.len() - 1) as f64);
            for w in cuts.windows(2) {
                total += integrate_smoothed(inner, w[0], w[1], &piece_spec)?;
            }
            total
        }
    };
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::{circular_survival, spherical_survival, CubePoint};
    use crate::special::GammaParam;

    #[test]
    fn gauss_rule_is_exact_for_polynomials() {
        let rule = GaussRule::new(16);
        let s: f64 = rule.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // x^30 has integral 2/31 on [-1, 1]; degree 31 is the rule's limit.
        let mut f = |x: f64| x.powi(30);
        assert!((rule.apply(&mut f, -1.0, 1.0).0 - 2.0 / 31.0).abs() < 1e-14);
        let r64 = GaussRule::new(64);
        assert!(r64.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!((r64.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn integrate_examples() {
        let spec = QuadratureSpec::default();
        assert!((integrate(f64::sin, 0.0, PI, &spec).unwrap() - 2.0).abs() < 1e-12);
        assert!((integrate(|x| x * x, 1.0, 0.0, &spec).unwrap() + 1.0 / 3.0).abs() < 1e-14);
        let simpson = QuadratureSpec { rule: QuadRule::AdaptiveSimpson, ..spec };
        assert!((integrate(f64::exp, 0.0, 1.0, &simpson).unwrap() - (1f64.exp() - 1.0)).abs() < 1e-9);
        // Quarter circle: square-root endpoint.
        let q = integrate_smoothed(|s| one_minus_sq(s).sqrt(), 0.0, 1.0, &spec).unwrap();
        assert!((q - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn spec_validation() {
        let bad = [
            QuadratureSpec { abs_tol: 0.0, ..Default::default() },
            QuadratureSpec { rule: QuadRule::GaussLegendre(8), ..Default::default() },
            QuadratureSpec { max_subdivisions: 1, ..Default::default() },
        ];
        for s in bad {
            assert!(integrate(|x| x, 0.0, 1.0, &s).is_err());
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let spec = QuadratureSpec { abs_tol: 1e-15, max_subdivisions: 9, rule: QuadRule::GaussLegendre(16) };
        let err = integrate(|x: f64| x.abs().sqrt(), -1.0, 1.0, &spec).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }

    #[test]
    fn circular_oracle_examples() {
        let spec = QuadratureSpec::default();
        assert!((quad_survival_circular(0.0, 0.0, &spec).unwrap() - 0.25).abs() < 1e-12);
        let v = quad_survival_circular(0.3, 0.4, &spec).unwrap();
        assert!((v - circular_survival(0.3, 0.4).unwrap()).abs() < 1e-10);
        assert!(quad_survival_circular(0.6, 0.8 - 1e-9, &spec).unwrap() < 1e-9);
        assert!(quad_survival_circular(0.6, 0.8, &spec).is_err());
        // alpha(x, 0) = 0, so the survival on the axis is (1 - x)/4.
        for x in [0.1, 0.5, 0.95] {
            assert!((quad_survival_circular(x, 0.0, &spec).unwrap() - (1.0 - x) / 4.0).abs() < 1e-10);
        }
    }

    #[test]
    fn spherical_oracle_examples() {
        let spec = QuadratureSpec::default();
        assert!((quad_survival_spherical(0.0, 0.0, 0.0, &spec).unwrap() - 0.125).abs() < 1e-12);
        let v = quad_survival_spherical(0.2, 0.3, 0.4, &spec).unwrap();
        assert!((v - spherical_survival(0.2, 0.3, 0.4).unwrap()).abs() < 1e-10);
        assert!(quad_survival_spherical(0.6, 0.6, 0.6, &spec).is_err());
    }

    fn rect(u0: f64, v0: f64, u1: f64, v1: f64) -> Rectangle {
        Rectangle::new(CubePoint::xy(u0, v0).unwrap(), CubePoint::xy(u1, v1).unwrap()).unwrap()
    }

    #[test]
    fn mass_examples() {
        let spec = QuadratureSpec::default();
        let full = Rectangle::full(2).unwrap();
        let models = [
            CopulaModel::circular(),
            CopulaModel::nonlinear_disk(),
            CopulaModel::elliptical(GammaParam::new(std::f64::consts::FRAC_PI_4).unwrap()),
            CopulaModel::elliptical(GammaParam::new(-1.2).unwrap()),
        ];
        for m in models {
            let mass = quad_mass_2d(&m, &full, &spec).unwrap();
            assert!((mass - 1.0).abs() < 1e-8, "{m}: {mass}");
        }
        let circ = CopulaModel::circular();
        let r = rect(0.0, 0.0, 0.3, 0.4);
        let vol = crate::copula::cdf_volume(&circ, &r).unwrap();
        assert!((quad_mass_2d(&circ, &r, &spec).unwrap() - vol).abs() < 1e-8);
        assert!(matches!(
            quad_mass_2d(&CopulaModel::spherical(), &full, &spec),
            Err(Error::DimensionMismatch { .. } | Error::UnsupportedModel(_))
        ));
    }
}
