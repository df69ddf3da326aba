//! Structured record of closed-form versus oracle comparisons.

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One comparison.
///
/// `abs_diff` is `|closed_form - oracle|` for two-sided checks. One-sided
/// checks (non-negative rectangle mass, the KS negative control) store the
/// size of the violation instead, so `pass` is always `abs_diff <= tol`.
/// A check whose evaluation failed has `null` values and `pass = false`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub model: String,
    pub input: Vec<f64>,
    pub closed_form: Option<f64>,
    pub oracle: Option<f64>,
    pub abs_diff: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckRecord {
    pub fn two_sided(
        name: impl Into<String>,
        model: impl Into<String>,
        input: Vec<f64>,
        closed_form: f64,
        oracle: f64,
        tol: f64,
    ) -> Self {
        let diff = (closed_form - oracle).abs();
        Self::with_diff(name, model, input, closed_form, oracle, diff, tol)
    }

    pub fn with_diff(
        name: impl Into<String>,
        model: impl Into<String>,
        input: Vec<f64>,
        closed_form: f64,
        oracle: f64,
        abs_diff: f64,
        tol: f64,
    ) -> Self {
        let finite = closed_form.is_finite() && oracle.is_finite() && abs_diff.is_finite();
        let keep = |v: f64| v.is_finite().then_some(v);
        Self {
            name: name.into(),
            model: model.into(),
            input,
            closed_form: keep(closed_form),
            oracle: keep(oracle),
            abs_diff: keep(abs_diff),
            tol,
            pass: finite && abs_diff <= tol,
            error: None,
        }
    }

    pub fn failed(name: impl Into<String>, model: impl Into<String>, input: Vec<f64>, tol: f64, error: String) -> Self {
        Self {
            name: name.into(),
            model: model.into(),
            input,
            closed_form: None,
            oracle: None,
            abs_diff: None,
            tol,
            pass: false,
            error: Some(error),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rng_algorithm: String,
    pub seed: u64,
    pub global_pass: bool,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl VerificationReport {
    pub fn new(rng_algorithm: impl Into<String>, seed: u64, checks: Vec<CheckRecord>) -> Self {
        let global_pass = checks.iter().all(|c| c.pass);
        Self { rng_algorithm: rng_algorithm.into(), seed, global_pass, checks, timestamp: None }
    }

    /// Stamp with the current UTC time in RFC 3339 form.
    pub fn stamped(mut self) -> Self {
        self.timestamp = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
