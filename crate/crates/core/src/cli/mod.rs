//! Command-line front end: grid evaluation, sampling, cap areas and the
//! verification suite.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad
//! configuration or domain error, 3 density requested for a model that has
//! none.

pub mod commands;
pub mod parse;

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::copula::CopulaModel;
use crate::error::{Error, Result};
use crate::oracle::{QuadratureSpec, VerifyConfig};
use crate::special::GammaParam;

pub use commands::{
    cmd_caparea, cmd_eval, cmd_sample, cmd_sample_to_file, cmd_verify, format_significant, sidecar_path, GridSpec,
    OutputFormat, Quantity, SampleMeta,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "copulas",
    version,
    about = "Circular, spherical, elliptical and nonlinear copulas on the centered cube"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate pdf, cdf or survival on a regular grid.
    Eval(EvalArgs),
    /// Draw exact samples.
    Sample(SampleArgs),
    /// Run the closed-form versus oracle verification suite.
    Verify(VerifyArgs),
    /// Area of the intersection of two spherical caps (radii and center distance in radians).
    Caparea {
        #[arg(value_parser = parse::parse_angle, allow_hyphen_values = true)]
        r1: f64,
        #[arg(value_parser = parse::parse_angle, allow_hyphen_values = true)]
        r2: f64,
        #[arg(value_parser = parse::parse_angle, allow_hyphen_values = true)]
        d: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Circular,
    Spherical,
    Elliptical,
    Nonlinear,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,
    /// Skew angle in radians for the elliptical model, e.g. 0.3, pi/4, -pi/8.
    #[arg(long, value_parser = parse::parse_angle, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
}

impl ModelArgs {
    pub fn build(&self) -> Result<CopulaModel> {
        match (self.model, self.gamma) {
            (ModelName::Elliptical, Some(g)) => Ok(CopulaModel::elliptical(GammaParam::new(g)?)),
            (ModelName::Elliptical, None) => {
                Err(Error::InvalidConfig("--gamma is required for the elliptical model".into()))
            }
            (_, Some(_)) => Err(Error::InvalidConfig("--gamma only applies to the elliptical model".into())),
            (ModelName::Circular, None) => Ok(CopulaModel::circular()),
            (ModelName::Spherical, None) => Ok(CopulaModel::spherical()),
            (ModelName::Nonlinear, None) => Ok(CopulaModel::nonlinear_disk()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Pdf,
    Cdf,
    Survival,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = QuantityArg::Cdf)]
    pub quantity: QuantityArg,
    /// Points per axis, endpoints included.
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    /// Axis range `lo:hi`; give once for all axes or once per axis. Defaults to -1:1.
    #[arg(long, value_parser = parse::parse_bounds, allow_hyphen_values = true)]
    pub bounds: Vec<(f64, f64)>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// CSV destination; metadata goes to `<out>.meta.json`. Without it the
    /// CSV goes to stdout and the metadata to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave the timestamp out of the metadata.
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub seed: u64,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Multiplier applied to every check tolerance.
    #[arg(long, default_value_t = 1.0)]
    pub tol_scale: f64,
    /// Absolute tolerance of the quadrature oracle.
    #[arg(long)]
    pub quad_tol: Option<f64>,
    /// Batch size for the KS and moment checks.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Sample size of each Monte-Carlo probability estimate.
    #[arg(long)]
    pub mc_samples: Option<usize>,
    /// Bias added to the closed forms, to confirm the suite catches it.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha_bias: f64,
    #[arg(long)]
    pub no_timestamp: bool,
}

impl VerifyArgs {
    pub fn config(&self) -> VerifyConfig {
        let mut cfg = VerifyConfig {
            seed: self.seed,
            tol_scale: self.tol_scale,
            alpha_bias: self.alpha_bias,
            ..Default::default()
        };
        if let Some(t) = self.quad_tol {
            cfg.quadrature = QuadratureSpec { abs_tol: t, ..cfg.quadrature };
        }
        if let Some(n) = self.samples {
            cfg.samples = n;
        }
        if let Some(n) = self.mc_samples {
            cfg.mc_samples = n;
        }
        cfg
    }
}

/// Parse `args` (program name first), run the command and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for a failed command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAbsolutelyContinuous { .. } => EXIT_UNSUPPORTED,
        _ => EXIT_CONFIG,
    }
}

fn execute(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Eval(a) => {
            let model = a.model.build()?;
            let quantity = match a.quantity {
                QuantityArg::Pdf => Quantity::Pdf,
                QuantityArg::Cdf => Quantity::Cdf,
                QuantityArg::Survival => Quantity::Survival,
            };
            let format = match a.format {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Json => OutputFormat::Json,
            };
            let grid = GridSpec::new(model.dim(), a.grid, &a.bounds, quantity)?;
            if quantity == Quantity::Pdf && !model.has_density() {
                return Err(Error::NotAbsolutelyContinuous { model: model.name() });
            }
            with_output(a.out.as_ref(), |w| cmd_eval(&model, &grid, format, w))?;
            Ok(EXIT_OK)
        }
        Command::Sample(a) => {
            let model = a.model.build()?;
            if a.n == 0 {
                return Err(Error::InvalidConfig("--n must be at least 1".into()));
            }
            match &a.out {
                Some(path) => {
                    cmd_sample_to_file(&model, a.n, a.seed, !a.no_timestamp, path)?;
                }
                None => {
                    let stdout = io::stdout();
                    let meta = cmd_sample(&model, a.n, a.seed, !a.no_timestamp, &mut BufWriter::new(stdout.lock()))?;
                    eprintln!("{}", serde_json::to_string(&meta)?);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let cfg = a.config();
            cfg.validate()?;
            let report = with_output(a.out.as_ref(), |w| cmd_verify(&cfg, !a.no_timestamp, w))?;
            let failures: Vec<_> = report.failures().collect();
            for c in &failures {
                eprintln!("FAIL {} [{}] input {:?}: diff {:?} tol {:e}", c.name, c.model, c.input, c.abs_diff, c.tol);
            }
            eprintln!("{} checks, {} failed", report.checks.len(), failures.len());
            Ok(if report.global_pass { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Caparea { r1, r2, d } => {
            println!("{}", cmd_caparea(*r1, *r2, *d)?);
            Ok(EXIT_OK)
        }
    }
}

fn with_output<R>(path: Option<&PathBuf>, f: impl FnOnce(&mut dyn Write) -> Result<R>) -> Result<R> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(fs::File::create(p)?);
            let r = f(&mut w)?;
            w.flush()?;
            Ok(r)
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        run(std::iter::once("copulas").chain(args.iter().copied()))
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn config_errors_exit_two() {
        assert_eq!(code(&["eval", "--model", "elliptical"]), EXIT_CONFIG);
        assert_eq!(code(&["eval", "--model", "circular", "--gamma", "0.3"]), EXIT_CONFIG);
        assert_eq!(code(&["eval", "--model", "elliptical", "--gamma", "2"]), EXIT_CONFIG);
        assert_eq!(code(&["eval", "--model", "circular", "--grid", "1"]), EXIT_CONFIG);
        assert_eq!(code(&["sample", "--model", "circular", "--n", "5"]), EXIT_CONFIG);
        assert_eq!(code(&["sample", "--model", "circular", "--n", "0", "--seed", "1"]), EXIT_CONFIG);
        assert_eq!(code(&["verify"]), EXIT_CONFIG);
        assert_eq!(code(&["verify", "--seed", "1", "--samples", "10"]), EXIT_CONFIG);
        assert_eq!(code(&["caparea", "0.5", "0.5", "1.5"]), EXIT_CONFIG);
        assert_eq!(code(&["frobnicate"]), EXIT_CONFIG);
    }

    #[test]
    fn spherical_pdf_exits_three() {
        assert_eq!(code(&["eval", "--model", "spherical", "--quantity", "pdf", "--grid", "2"]), EXIT_UNSUPPORTED);
    }

    #[test]
    fn negative_gamma_parses() {
        let cli = Cli::try_parse_from(["copulas", "eval", "--model", "elliptical", "--gamma", "-pi/8"]).unwrap();
        let Command::Eval(a) = cli.command else { panic!() };
        assert_eq!(a.model.gamma, Some(-std::f64::consts::FRAC_PI_8));
        assert!(a.model.build().is_ok());
    }
}
