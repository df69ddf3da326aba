//! The four commands as library functions writing to arbitrary sinks.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::copula::{sample, CopulaModel, CubePoint, RNG_ALGORITHM};
use crate::error::{Error, Result};
use crate::oracle::{verify_suite, VerificationReport, VerifyConfig};
use crate::special::cap_intersection_area;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Pdf,
    Cdf,
    Survival,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Evaluation grid: `axis_points` equally spaced values per axis, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub axis_points: usize,
    /// One `(lo, hi)` per axis.
    pub bounds: Vec<(f64, f64)>,
    pub quantity: Quantity,
}

impl GridSpec {
    pub fn new(dim: usize, axis_points: usize, bounds: &[(f64, f64)], quantity: Quantity) -> Result<Self> {
        if axis_points < 2 {
            return Err(Error::InvalidConfig(format!("grid needs at least 2 points per axis, got {axis_points}")));
        }
        let bounds = match bounds.len() {
            0 => vec![(-1.0, 1.0); dim],
            1 => vec![bounds[0]; dim],
            n if n == dim => bounds.to_vec(),
            n => return Err(Error::InvalidConfig(format!("{n} bounds given for a {dim}-dimensional grid"))),
        };
        if let Some(b) = bounds.iter().find(|(lo, hi)| !(-1.0 <= *lo && lo < hi && *hi <= 1.0)) {
            return Err(Error::InvalidConfig(format!("bounds {b:?} must satisfy -1 <= lo < hi <= 1")));
        }
        Ok(Self { axis_points, bounds, quantity })
    }

    fn axis(&self, i: usize) -> Vec<f64> {
        let (lo, hi) = self.bounds[i];
        let last = self.axis_points - 1;
        (0..=last).map(|k| if k == last { hi } else { lo + (hi - lo) * k as f64 / last as f64 }).collect()
    }
}

#[derive(Serialize)]
struct GridRecord {
    x: f64,
    y: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<f64>,
    value: f64,
}

/// Evaluate `grid.quantity` over the grid, first axis slowest.
pub fn cmd_eval(model: &CopulaModel, grid: &GridSpec, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    if grid.quantity == Quantity::Pdf && !model.has_density() {
        return Err(Error::NotAbsolutelyContinuous { model: model.name() });
    }
    let dim = model.dim();
    if grid.bounds.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: grid.bounds.len() });
    }
    let axes: Vec<Vec<f64>> = (0..dim).map(|i| grid.axis(i)).collect();
    let eval = |c: &[f64]| -> Result<f64> {
        let p = CubePoint::new(c)?;
        match grid.quantity {
            Quantity::Pdf => model.pdf(&p),
            Quantity::Cdf => model.cdf(&p),
            Quantity::Survival => model.survival(&p),
        }
    };
    let mut buf = String::new();
    let mut first = true;
    match format {
        OutputFormat::Csv => buf.push_str(if dim == 2 { "x,y,value\n" } else { "x,y,z,value\n" }),
        OutputFormat::Json => buf.push_str("[\n"),
    }
    let mut point = vec![0.0; dim];
    let total = axes[0].len().pow(dim as u32);
    for flat in 0..total {
        let mut rem = flat;
        for i in (0..dim).rev() {
            point[i] = axes[i][rem % axes[i].len()];
            rem /= axes[i].len();
        }
        let value = eval(&point)?;
        match format {
            OutputFormat::Csv => {
                for c in &point {
                    write!(buf, "{c},").expect("writing to a String");
                }
                writeln!(buf, "{value}").expect("writing to a String");
            }
            OutputFormat::Json => {
                if !first {
                    buf.push_str(",\n");
                }
                let rec = GridRecord { x: point[0], y: point[1], z: point.get(2).copied(), value };
                buf.push_str(&serde_json::to_string(&rec)?);
            }
        }
        first = false;
        if buf.len() > 1 << 16 {
            out.write_all(buf.as_bytes())?;
            buf.clear();
        }
    }
    if format == OutputFormat::Json {
        buf.push_str("\n]\n");
    }
    out.write_all(buf.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Metadata written next to a sample file.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct SampleMeta {
    pub model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    pub seed: u64,
    pub rng_algorithm: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

/// `<out>.meta.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Draw `n` samples as CSV `x,y[,z]` and return the matching metadata.
pub fn cmd_sample(
    model: &CopulaModel,
    n: usize,
    seed: u64,
    timestamp: bool,
    out: &mut dyn Write,
) -> Result<SampleMeta> {
    let batch = sample(model, n, seed)?;
    let mut buf = String::from(if model.dim() == 2 { "x,y\n" } else { "x,y,z\n" });
    for row in batch.rows() {
        for (i, c) in row.iter().enumerate() {
            if i > 0 {
                buf.push(',');
            }
            write!(buf, "{c}").expect("writing to a String");
        }
        buf.push('\n');
        if buf.len() > 1 << 16 {
            out.write_all(buf.as_bytes())?;
            buf.clear();
        }
    }
    out.write_all(buf.as_bytes())?;
    out.flush()?;
    Ok(SampleMeta {
        model: model.name().to_string(),
        gamma: model.gamma().map(|g| g.value()),
        seed,
        rng_algorithm: RNG_ALGORITHM.to_string(),
        n,
        timestamp: timestamp.then(now_rfc3339),
    })
}

/// Write samples to `path` and metadata to its sidecar.
pub fn cmd_sample_to_file(
    model: &CopulaModel,
    n: usize,
    seed: u64,
    timestamp: bool,
    path: &Path,
) -> Result<SampleMeta> {
    let mut file = std::io::BufWriter::new(fs::File::create(path)?);
    let meta = cmd_sample(model, n, seed, timestamp, &mut file)?;
    let mut json = serde_json::to_string_pretty(&meta)?;
    json.push('\n');
    fs::write(sidecar_path(path), json)?;
    Ok(meta)
}

/// Run the suite; the report is stamped unless `timestamp` is false.
pub fn cmd_verify(cfg: &VerifyConfig, timestamp: bool, out: &mut dyn Write) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut report = verify_suite(cfg);
    if timestamp {
        report = report.stamped();
    }
    out.write_all(report.to_json()?.as_bytes())?;
    out.flush()?;
    Ok(report)
}

/// Diangle area with 15 significant digits.
pub fn cmd_caparea(r1: f64, r2: f64, d: f64) -> Result<String> {
    Ok(format_significant(cap_intersection_area(r1, r2, d)?, 15))
}

/// `v` rounded to `digits` significant digits in positional notation.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{}", if v == 0.0 { 0.0 } else { v });
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

fn now_rfc3339() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}
