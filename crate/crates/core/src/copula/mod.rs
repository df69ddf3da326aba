//! The four copula models behind a common [`CopulaModel`] handle.
//!
//! Every model lives on the centered cube `[-1, 1]^d` and has uniform[-1, 1]
//! one-dimensional marginals. The free functions in the submodules are the
//! closed forms; `CopulaModel` dispatches to them by kind and dimension.

pub mod circular;
pub mod elliptical;
pub mod nonlinear;
pub mod sampling;
pub mod spherical;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::special::GammaParam;

pub use circular::{circular_cdf, circular_pdf, circular_survival, marginal_pdf_circle, marginal_pdf_disk};
pub use elliptical::{elliptical_cdf, elliptical_correlation, elliptical_pdf};
pub use nonlinear::{ellipse_intersection_area, nonlinear_cdf, nonlinear_forward, nonlinear_inverse, nonlinear_pdf};
pub use sampling::{sample, PointSampler, SampleBatch, RNG_ALGORITHM};
pub use spherical::{spherical_cdf, spherical_survival};

/// A point of `[-1, 1]^d`, `d` in {2, 3}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubePoint {
    coords: [f64; 3],
    dim: usize,
}

impl CubePoint {
    pub fn new(coords: &[f64]) -> Result<Self> {
        let dim = coords.len();
        if !(2..=3).contains(&dim) {
            return Err(domain("CubePoint::new", format!("dimension {dim} is not 2 or 3")));
        }
        if let Some(c) = coords.iter().find(|c| !(c.abs() <= 1.0)) {
            return Err(domain("CubePoint::new", format!("coordinate {c} not in [-1, 1]")));
        }
        let mut buf = [0.0; 3];
        buf[..dim].copy_from_slice(coords);
        Ok(Self { coords: buf, dim })
    }

    pub fn xy(x: f64, y: f64) -> Result<Self> {
        Self::new(&[x, y])
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(&[x, y, z])
    }

    /// The all-ones corner of `[-1, 1]^dim`.
    pub fn upper_corner(dim: usize) -> Result<Self> {
        Self::new(&vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }
}

impl Serialize for CubePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

/// Axis-aligned box `[lower, upper]` inside the cube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    lower: CubePoint,
    upper: CubePoint,
}

impl Rectangle {
    pub fn new(lower: CubePoint, upper: CubePoint) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::DimensionMismatch { expected: lower.dim(), got: upper.dim() });
        }
        if lower.coords().iter().zip(upper.coords()).any(|(l, u)| l > u) {
            return Err(domain("Rectangle::new", "lower corner exceeds upper corner"));
        }
        Ok(Self { lower, upper })
    }

    /// The whole cube `[-1, 1]^dim`.
    pub fn full(dim: usize) -> Result<Self> {
        let upper = CubePoint::upper_corner(dim)?;
        let lower = CubePoint::new(&vec![-1.0; dim])?;
        Self::new(lower, upper)
    }

    pub fn lower(&self) -> &CubePoint {
        &self.lower
    }

    pub fn upper(&self) -> &CubePoint {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CopulaKind {
    Circular,
    Spherical,
    Elliptical(GammaParam),
    NonlinearDisk,
}

/// Immutable handle over one of the four models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopulaModel {
    kind: CopulaKind,
}

impl CopulaModel {
    pub fn circular() -> Self {
        Self { kind: CopulaKind::Circular }
    }

    pub fn spherical() -> Self {
        Self { kind: CopulaKind::Spherical }
    }

    pub fn elliptical(gamma: GammaParam) -> Self {
        Self { kind: CopulaKind::Elliptical(gamma) }
    }

    pub fn nonlinear_disk() -> Self {
        Self { kind: CopulaKind::NonlinearDisk }
    }

    /// The spherically symmetric copula of the unit ball in `dim` dimensions.
    ///
    /// Exists only for `dim = 2` (circular) and `dim = 3` (spherical); larger
    /// dimensions fail with [`Error::NoSphericalCopula`].
    pub fn spherically_symmetric(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(Self::circular()),
            3 => Ok(Self::spherical()),
            d if d >= 4 => Err(Error::NoSphericalCopula { dim: d }),
            d => Err(Error::InvalidConfig(format!("dimension {d} has no bivariate or higher copula"))),
        }
    }

    pub fn kind(&self) -> CopulaKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            CopulaKind::Spherical => 3,
            _ => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            CopulaKind::Circular => "circular",
            CopulaKind::Spherical => "spherical",
            CopulaKind::Elliptical(_) => "elliptical",
            CopulaKind::NonlinearDisk => "nonlinear",
        }
    }

    /// Skew angle for elliptical models.
    pub fn gamma(&self) -> Option<GammaParam> {
        match self.kind {
            CopulaKind::Elliptical(g) => Some(g),
            _ => None,
        }
    }

    pub fn has_density(&self) -> bool {
        !matches!(self.kind, CopulaKind::Spherical)
    }

    fn check(&self, p: &CubePoint) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: p.dim() });
        }
        Ok(())
    }

    /// Lebesgue density. The spherical model has none and reports
    /// [`Error::NotAbsolutelyContinuous`].
    pub fn pdf(&self, p: &CubePoint) -> Result<f64> {
        self.check(p)?;
        let c = p.coords();
        match self.kind {
            CopulaKind::Circular => circular_pdf(c[0], c[1]),
            CopulaKind::Spherical => Err(Error::NotAbsolutelyContinuous { model: "spherical" }),
            CopulaKind::Elliptical(g) => elliptical_pdf(g, c[0], c[1]),
            CopulaKind::NonlinearDisk => nonlinear_pdf(c[0], c[1]),
        }
    }

    pub fn cdf(&self, p: &CubePoint) -> Result<f64> {
        self.check(p)?;
        let c = p.coords();
        match self.kind {
            CopulaKind::Circular => circular_cdf(c[0], c[1]),
            CopulaKind::Spherical => spherical_cdf(c[0], c[1], c[2]),
            CopulaKind::Elliptical(g) => elliptical_cdf(g, c[0], c[1]),
            CopulaKind::NonlinearDisk => nonlinear_cdf(c[0], c[1]),
        }
    }

    /// Joint exceedance probability `P[Z_i > p_i for all i]`.
    pub fn survival(&self, p: &CubePoint) -> Result<f64> {
        self.check(p)?;
        let c = p.coords();
        match self.kind {
            CopulaKind::Circular => circular_survival(c[0], c[1]),
            CopulaKind::Spherical if c.iter().all(|&t| t >= 0.0) => spherical_survival(c[0], c[1], c[2]),
            CopulaKind::Spherical => {
                // Inclusion–exclusion over the CDF; the pair margins are circular.
                let (x, y, z) = (c[0], c[1], c[2]);
                let singles = (x + 1.0) / 2.0 + (y + 1.0) / 2.0 + (z + 1.0) / 2.0;
                let pairs = circular_cdf(x, y)? + circular_cdf(x, z)? + circular_cdf(y, z)?;
                Ok((1.0 - singles + pairs - spherical_cdf(x, y, z)?).clamp(0.0, 1.0))
            }
            CopulaKind::Elliptical(_) | CopulaKind::NonlinearDisk => {
                let (u, v) = (c[0], c[1]);
                Ok((self.cdf(p)? - (u + v) / 2.0).clamp(0.0, 1.0))
            }
        }
    }

    /// Density of a bivariate model at `(u, v)`, 0 outside the square and for
    /// the spherical model. Skips point validation for use in quadrature loops.
    pub(crate) fn pdf_unchecked(&self, u: f64, v: f64) -> f64 {
        let r = match self.kind {
            CopulaKind::Circular => circular_pdf(u, v),
            CopulaKind::Elliptical(g) => elliptical_pdf(g, u, v),
            CopulaKind::NonlinearDisk => nonlinear_pdf(u, v),
            CopulaKind::Spherical => Ok(0.0),
        };
        r.unwrap_or(0.0)
    }

    /// Whether `p` lies in the closed support of the model.
    pub fn in_support(&self, p: &CubePoint, tol: f64) -> bool {
        if p.dim() != self.dim() {
            return false;
        }
        let c = p.coords();
        match self.kind {
            CopulaKind::Circular => c[0] * c[0] + c[1] * c[1] <= 1.0 + tol,
            CopulaKind::Spherical => (c[0] * c[0] + c[1] * c[1] + c[2] * c[2] - 1.0).abs() <= tol,
            CopulaKind::Elliptical(g) => g.ellipse_gap(c[0], c[1]) >= -tol,
            CopulaKind::NonlinearDisk => true,
        }
    }
}

impl fmt::Display for CopulaModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CopulaKind::Elliptical(g) => write!(f, "elliptical(gamma={})", g.value()),
            _ => f.write_str(self.name()),
        }
    }
}

/// Probability mass of `rect`: the alternating sum of the CDF over its `2^d` corners.
pub fn cdf_volume(model: &CopulaModel, rect: &Rectangle) -> Result<f64> {
    let dim = rect.dim();
    if dim != model.dim() {
        return Err(Error::DimensionMismatch { expected: model.dim(), got: dim });
    }
    let (lo, hi) = (rect.lower().coords(), rect.upper().coords());
    let mut total = 0.0;
    for mask in 0u32..(1 << dim) {
        let mut corner = [0.0; 3];
        for (i, c) in corner.iter_mut().take(dim).enumerate() {
            *c = if mask & (1 << i) != 0 { hi[i] } else { lo[i] };
        }
        let lower_count = dim as u32 - mask.count_ones();
        let sign = if lower_count.is_multiple_of(2) { 1.0 } else { -1.0 };
        total += sign * model.cdf(&CubePoint::new(&corner[..dim])?)?;
    }
    Ok(total)
}
