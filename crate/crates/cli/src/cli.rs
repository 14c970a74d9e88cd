//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use forelli_core::field::{classify, validate_normal_form, NormalFormField};
use forelli_core::flow::{
    flow_residual, numeric_flow, straight_path, symbolic_flow, Direction, DEFAULT_STEP,
};
use forelli_core::formal::oracle::DenseKernel;
use forelli_core::formal::{solve_kernel, SolverError};
use forelli_core::gallery::{verify, CounterexampleSpec, GalleryError, VerifyConfig};
use forelli_core::region::{
    admissible_candidates, boundary_bound_report, find_star_component, region_diagnostics, BBox,
    RegionError, RegionSpec,
};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::format::{self, complex_list, real};
use crate::io::{read_text, write_atomic};
use crate::report;
use crate::suite;

/// Normal-form vector fields, conjugate-field kernels, flows, plane regions
/// and counterexample checks.
#[derive(Debug, Parser)]
#[command(name = "forelli", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Run the acceptance battery and print one pass/fail line per criterion.
    #[arg(long)]
    pub paper_suite: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = suite::DEFAULT_SEED)]
    pub seed: u64,
    /// Report path; standard output when absent.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the normal-form conditions of a field.
    FieldValidate {
        #[arg(long)]
        field: PathBuf,
    },
    /// Validity, contraction, alignment, resonances and the set A(λ).
    FieldClassify {
        #[arg(long)]
        field: PathBuf,
        /// Degree cap for searches that cannot be bounded a priori.
        #[arg(long, default_value_t = 12)]
        cap: u32,
    },
    /// Kernel of the conjugate field on series truncated at `degree`.
    Kernel {
        #[arg(long)]
        field: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
        degree: u32,
        /// Also compare against the dense nullspace.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact flow curve, optionally evaluated against numerical integration.
    Flow {
        #[arg(long)]
        field: PathBuf,
        #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
        direction: DirectionArg,
        /// Starting point as `re,im;re,im;...`.
        #[arg(long, requires = "zeta")]
        eta: Option<String>,
        /// Flow time as `re,im`.
        #[arg(long, requires = "eta")]
        zeta: Option<String>,
    },
    /// Raster, components and bound diagnostics of D(P, λ).
    Region {
        #[arg(long)]
        spec: PathBuf,
        /// `re_min,re_max,im_min,im_max`.
        #[arg(long, allow_hyphen_values = true)]
        bbox: String,
        #[arg(long)]
        res: f64,
        /// Right-marching admissible points to list.
        #[arg(long, default_value_t = 5)]
        candidates: usize,
        #[arg(long, default_value_t = 3)]
        ell_max: u32,
    },
    /// Verify one of the counterexample families.
    Verify {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha1: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha2: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
        #[arg(long, default_value_t = 1e-6)]
        leafwise_tol: f64,
        #[arg(long, default_value_t = 0.1)]
        witness_floor: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    FiniteSmooth,
    NegativeRatio,
    NonrealRatio,
}

/// Exit status classes.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unreadable input: exit 2.
    Usage(anyhow::Error),
    /// Well-formed input rejected by the mathematics: exit 1.
    Domain(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

trait Classify<T> {
    fn usage(self) -> Result<T, Failure>;
    fn domain(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn usage(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Usage(e.into()))
    }

    fn domain(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Domain(e.into()))
    }
}

/// Parses `argv`, runs the command and maps the outcome to an exit code.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            let (Failure::Usage(e) | Failure::Domain(e)) = &failure;
            eprintln!("error: {e:#}");
            ExitCode::from(failure.code())
        }
    }
}

/// Runs a parsed command; `Ok` carries the exit code.
pub fn execute(cli: &Cli) -> Result<u8, Failure> {
    match (&cli.command, cli.paper_suite) {
        (Some(_), true) => Err(Failure::Usage(anyhow!("--paper-suite takes no subcommand"))),
        (None, false) => Err(Failure::Usage(anyhow!("expected a subcommand or --paper-suite"))),
        (None, true) => run_suite(cli),
        (Some(command), false) => {
            let (value, code) = dispatch(command, cli.out.as_deref())?;
            emit(&value, cli.out.as_deref())?;
            Ok(code)
        }
    }
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).usage()?;
    text.push('\n');
    match out {
        Some(path) => write_atomic(path, text.as_bytes()).usage(),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_json(path: &Path, what: &str) -> Result<Value, Failure> {
    let text = read_text(path).usage()?;
    format::parse_json(&text, what).usage()
}

fn load_field(path: &Path) -> Result<NormalFormField, Failure> {
    let (lambda, g) = format::parse_field_parts(&load_json(path, "field file")?).usage()?;
    NormalFormField::new(lambda, g).map_err(|e| anyhow!("invalid field: {e}")).domain()
}

fn parse_complex_arg(text: &str) -> anyhow::Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().with_context(|| format!("bad number {s:?}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => bail!("expected re,im but found {text:?}"),
    }
}

fn parse_bbox(text: &str) -> anyhow::Result<BBox> {
    let v = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad number {s:?} in bbox")))
        .collect::<anyhow::Result<Vec<f64>>>()?;
    let [a, b, c, d] = v.as_slice() else { bail!("bbox needs four numbers") };
    Ok(BBox::new(*a, *b, *c, *d)?)
}

fn dispatch(command: &Command, out: Option<&Path>) -> Result<(Value, u8), Failure> {
    match command {
        Command::FieldValidate { field } => {
            let field = load_field(field)?;
            let validity = validate_normal_form(&field);
            let code = if validity.is_valid() { 0 } else { 1 };
            Ok((json!({"field": format::field(&field), "validation": report::validation(&validity)}), code))
        }
        Command::FieldClassify { field, cap } => {
            let field = load_field(field)?;
            let c = classify(&field, *cap);
            Ok((json!({"field": format::field(&field), "classification": report::classification(&c, *cap)}), 0))
        }
        Command::Kernel { field, degree, oracle } => {
            let field = load_field(field)?;
            let kernel = solve_kernel(&field, *degree).map_err(solver_failure)?;
            let comparison = if *oracle {
                let dense = DenseKernel::build(&field, *degree).map_err(solver_failure)?;
                let basis: Vec<_> = kernel.basis.iter().map(|s| s.poly().clone()).collect();
                Some(dense.compare(&basis))
            } else {
                None
            };
            Ok((
                json!({"field": format::field(&field), "kernel": report::kernel(&kernel, comparison.as_ref())}),
                0,
            ))
        }
        Command::Flow { field, direction, eta, zeta } => {
            let field = load_field(field)?;
            let direction = match direction {
                DirectionArg::Forward => Direction::Forward,
                DirectionArg::Backward => Direction::Backward,
            };
            let curve = symbolic_flow(&field, direction).domain()?;
            let residual_zero = flow_residual(&curve).iter().all(|r| r.is_zero());
            let mut value = json!({"field": format::field(&field), "flow": report::flow(&curve, residual_zero)});
            if let (Some(eta), Some(zeta)) = (eta, zeta) {
                let eta = eta
                    .split(';')
                    .map(parse_complex_arg)
                    .collect::<anyhow::Result<Vec<_>>>()
                    .usage()?;
                let zeta = parse_complex_arg(zeta).usage()?;
                if eta.len() != field.n() {
                    return Err(Failure::Usage(anyhow!(
                        "--eta has {} coordinates, the field has {}",
                        eta.len(),
                        field.n()
                    )));
                }
                let symbolic = curve.evaluate(&eta, zeta);
                let time = if direction == Direction::Forward { zeta } else { -zeta };
                let numeric = numeric_flow(&field, &eta, &straight_path(time, DEFAULT_STEP)).domain()?;
                let diff = symbolic.iter().zip(&numeric).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                value["sample"] = json!({
                    "eta": complex_list(&eta),
                    "zeta": format::complex(zeta),
                    "step": real(DEFAULT_STEP),
                    "symbolic": complex_list(&symbolic),
                    "numeric": complex_list(&numeric),
                    "max_difference": real(diff),
                });
            }
            Ok((value, 0))
        }
        Command::Region { spec, bbox, res, candidates, ell_max } => {
            let bbox = parse_bbox(bbox).usage()?;
            if !(res.is_finite() && *res > 0.0) {
                return Err(Failure::Usage(anyhow!("--res must be positive")));
            }
            let (p, lambda) = format::parse_region_parts(&load_json(spec, "region spec")?).usage()?;
            let spec = RegionSpec::new(p, lambda).domain()?;
            let map = find_star_component(&spec, bbox, *res).map_err(region_failure)?;
            let diagnostics = region_diagnostics(&spec, &map);
            let candidates = admissible_candidates(&spec, (*candidates).max(1)).map_err(region_failure)?;
            let one = Complex64::new(1.0, 0.0);
            let bounds = boundary_bound_report(&spec, |_| one, *ell_max, bbox, *res).map_err(region_failure)?;
            let raster_path = out.map(|p| p.with_extension("pgm"));
            let raster_name = raster_path
                .as_ref()
                .and_then(|p| p.file_name())
                .map(|n| n.to_string_lossy().into_owned());
            if let Some(path) = &raster_path {
                write_atomic(path, report::pgm(&map).as_bytes()).usage()?;
            }
            let value = report::region(&report::RegionParts {
                spec: &spec,
                map: &map,
                diagnostics: &diagnostics,
                candidates: &candidates,
                bounds: &bounds,
                raster: raster_name.as_deref(),
            });
            Ok((value, 0))
        }
        Command::Verify { case, k, t, alpha1, alpha2, b, h, leafwise_tol, witness_floor } => {
            let spec = match case {
                CaseArg::FiniteSmooth => CounterexampleSpec::FiniteSmooth { k: *k },
                CaseArg::NegativeRatio => CounterexampleSpec::negative_ratio(*t),
                CaseArg::NonrealRatio => CounterexampleSpec::NonRealRatio {
                    alpha1: *alpha1,
                    alpha2: *alpha2,
                    t: *t,
                    b: *b,
                },
            };
            let config = VerifyConfig {
                h: *h,
                leafwise_tol: *leafwise_tol,
                witness_floor: *witness_floor,
                ..VerifyConfig::default()
            };
            let r = verify(&spec, &config).map_err(|e| match e {
                GalleryError::InvalidParameters(_) => Failure::Usage(e.into()),
                other => Failure::Domain(other.into()),
            })?;
            Ok((report::verification(&r), 0))
        }
    }
}

fn solver_failure(e: SolverError) -> Failure {
    Failure::Domain(e.into())
}

fn region_failure(e: RegionError) -> Failure {
    match e {
        RegionError::InvalidGrid(_) => Failure::Usage(e.into()),
        other => Failure::Domain(other.into()),
    }
}

fn run_suite(cli: &Cli) -> Result<u8, Failure> {
    let outcomes = suite::run_all(cli.seed);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let passed = outcomes.iter().all(|o| o.passed);
    println!("paper suite: {}", if passed { "PASS" } else { "FAIL" });
    if let Some(path) = &cli.out {
        emit(&suite::summary(cli.seed, &outcomes), Some(path))?;
    }
    Ok(if passed { 0 } else { 1 })
}
