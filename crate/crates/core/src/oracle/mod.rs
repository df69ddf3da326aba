//! Independent numerical ground truth for the closed forms: quadrature of
//! the one-dimensional survival integrals and of the densities, Monte-Carlo
//! estimators on the exact samplers, a KS statistic, moment checks and the
//! verification report.

pub mod monte_carlo;
pub mod quadrature;
pub mod report;
pub mod stats;
pub mod suite;

pub use monte_carlo::{
    mc_cdf, mc_ellipse_intersection_area, mc_rect_mass, snap_probability, MCEstimate, MIN_MC_SAMPLES,
    PROBABILITY_ROUNDOFF,
};
pub use quadrature::{
    integrate, integrate_smoothed, integrate_smoothed_gaps, quad_mass_2d, quad_survival_circular,
    quad_survival_spherical, QuadRule, QuadratureSpec,
};
pub use report::{CheckRecord, VerificationReport};
pub use stats::{
    correlation_band, ks_critical_value, ks_uniform, mean_product, moment_check, pearson_correlation, MomentEstimate,
};
pub use suite::{
    default_models, derive_seed, halton, octant_ball_points, quarter_disk_points, random_rectangles, verify_suite,
    VerifyConfig,
};
