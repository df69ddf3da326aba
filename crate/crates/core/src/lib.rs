//! Circular, spherical, elliptical and nonlinear-disk copulas on the centered
//! cube `[-1, 1]^d`.
//!
//! * [`special`]: the arcsine kernels `alpha`, `Delta`, `alpha_gamma`, the
//!   region map of the elliptical family and the spherical-cap diangle area.
//! * [`copula`]: densities, CDFs, survival functions and exact samplers.
//! * [`oracle`]: quadrature and Monte-Carlo ground truth, KS statistics and the
//!   verification report.
//! * [`cli`]: the `copulas` command-line front end.
//!
//! ```
//! use spherical_copulas::copula::{CopulaModel, CubePoint};
//!
//! let m = CopulaModel::circular();
//! let f = m.cdf(&CubePoint::xy(0.0, 0.0).unwrap()).unwrap();
//! assert_eq!(f, 0.25);
//! ```

// `!(x <= 1.0)` is used throughout on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod copula;
pub mod error;
pub mod oracle;
pub mod special;

pub use copula::{CopulaKind, CopulaModel, CubePoint, Rectangle};
pub use error::{Error, Result};
pub use special::GammaParam;
