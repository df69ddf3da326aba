use thiserror::Error;

/// Errors raised by the copula models, the oracles and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function it was passed to.
    #[error("{func}: argument out of domain: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("point has dimension {got}, model expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("skew angle gamma = {0} is outside the open interval (-pi/2, pi/2)")]
    InvalidGamma(f64),

    /// A spherically symmetric law on the unit ball in dimension `dim` with uniform
    /// marginals would need E(Z_i^2) = 1/3 = E(R^2) E(U_i^2) = E(R^2)/dim, i.e. E(R^2) = dim/3 > 1.
    #[error(
        "no spherical copula exists in dimension {dim}: uniform[-1,1] marginals force \
         E(Z_i^2) = 1/3, but E(Z_i^2) = E(R^2) E(U_i^2) <= 1/{dim} on the unit ball"
    )]
    NoSphericalCopula { dim: usize },

    #[error("the {model} copula is not absolutely continuous (its mass lives on the unit sphere); it has no Lebesgue density")]
    NotAbsolutelyContinuous { model: &'static str },

    /// The two caps do not intersect in a single diangle.
    #[error("cap configuration r1 = {r1}, r2 = {r2}, d = {d} is not a single diangle: {reason}")]
    CapConfiguration { r1: f64, r2: f64, d: f64, reason: &'static str },

    #[error("quadrature did not reach abs_tol = {abs_tol:e} within {max_evaluations} evaluations (last error estimate {estimate:e})")]
    Convergence { abs_tol: f64, max_evaluations: usize, estimate: f64 },

    #[error("oracle disagrees with itself under permutation of its arguments: {values:?}")]
    PermutationDisagreement { values: Vec<f64> },

    #[error("{0}")]
    UnsupportedModel(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain { func, detail: detail.into() }
}
