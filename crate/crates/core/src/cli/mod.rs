//! Command-line front end: `verify`, `spectrum`, `geometry`, `oracle` and
//! `catalog`, each writing versioned JSON (or CSV) to stdout.

mod commands;
mod output;
mod verify;

use std::ffi::OsString;

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::error::Error;
use crate::operators::{parse_rational, MassTriple, PotentialParams, Variant};
use crate::oracle::{CheckKind, Tolerances, DEFAULT_FD_STEP, DEFAULT_SEED};
use crate::polyops::Rational;
use crate::spectra::Space;

pub use output::{csv_float, rational_string, SCHEMA};
pub use verify::{run_verify, CheckRecord, CheckStatus, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const SEED_ENV: &str = "QES3BODY_SEED";

#[derive(Debug, Parser)]
#[command(name = "qes3body", version, about = "Exact operators and spectra of the three-body problem in relative distances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the exact identity suite and the numeric oracles.
    Verify(VerifyArgs),
    /// Matrix spectrum of the algebraic Hamiltonian on one polynomial space.
    Spectrum(SpectrumArgs),
    /// Metric, coordinates and potentials at one configuration.
    Geometry(GeometryArgs),
    /// One finite-difference check.
    Oracle(OracleArgs),
    /// Every named operator and generator set.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Level of the invariant space (a rational is accepted as a formal level).
    #[arg(long = "N", value_parser = rational_arg, default_value = "2")]
    pub n_level: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "1")]
    pub omega: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "1")]
    pub gamma: Rational,
    /// Quartic coupling.
    #[arg(long = "A", value_parser = rational_arg, default_value = "1")]
    pub a_coupling: Rational,
}

impl ParamArgs {
    pub fn params(&self) -> crate::Result<PotentialParams> {
        PotentialParams::with_formal_level(
            self.n_level.clone(),
            self.omega.clone(),
            self.gamma.clone(),
            self.a_coupling.clone(),
        )
    }
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    /// Sample points per numeric check.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Finite-difference step.
    #[arg(long = "fd", default_value_t = DEFAULT_FD_STEP)]
    pub fd_step: f64,
    /// Random seed; falls back to $QES3BODY_SEED, then to a fixed default.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override a pass threshold, e.g. `--tolerance gauge=1e-5`.
    #[arg(long = "tolerance", value_parser = tolerance_arg)]
    pub tolerance: Vec<(String, f64)>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    /// Add 1 to the `∂12²` coefficient of the radial Laplacian before the
    /// commutator check.
    #[arg(long)]
    pub perturb: bool,
    #[arg(long, value_parser = masses_arg)]
    pub masses: Option<MassTriple>,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("format").args(["csv", "json"])))]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_parser = space_arg, default_value = "p1")]
    pub space: Space,
    #[arg(long, value_parser = variant_arg, default_value = "qes")]
    pub variant: Variant,
    /// Largest admissible level (defaults: 8 on p3, 24 on the tau spaces).
    #[arg(long)]
    pub max_n: Option<u32>,
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("point").args(["rho", "r"]).required(true)))]
pub struct GeometryArgs {
    /// Squared distances `ρ12,ρ13,ρ23`.
    #[arg(long, value_parser = triple_arg)]
    pub rho: Option<[f64; 3]>,
    /// Distances `r12,r13,r23`.
    #[arg(long, value_parser = triple_arg)]
    pub r: Option<[f64; 3]>,
    #[arg(long, value_parser = masses_arg)]
    pub masses: Option<MassTriple>,
    /// Step of the finite-difference curvature reported next to the closed
    /// form.
    #[arg(long = "fd", default_value_t = DEFAULT_FD_STEP)]
    pub fd_step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, value_parser = check_arg)]
    pub check: CheckKind,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CatalogArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_parser = masses_arg)]
    pub masses: Option<MassTriple>,
    /// Names and tags only.
    #[arg(long)]
    pub list_operators: bool,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn triple_arg(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {:?}", s));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.parse::<f64>().map_err(|e| format!("{:?}: {}", part, e))?;
    }
    Ok(out)
}

fn masses_arg(s: &str) -> Result<MassTriple, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated masses, got {:?}", s));
    }
    let m = parts.iter().map(|p| rational_arg(p)).collect::<Result<Vec<_>, _>>()?;
    MassTriple::new(m[0].clone(), m[1].clone(), m[2].clone()).map_err(|e| e.to_string())
}

fn tolerance_arg(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {:?}", s))?;
    let v = v.trim().parse::<f64>().map_err(|e| format!("{:?}: {}", v, e))?;
    Tolerances::default().set(k.trim(), v).map_err(|e| e.to_string())?;
    Ok((k.trim().to_string(), v))
}

fn space_arg(s: &str) -> Result<Space, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn variant_arg(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn check_arg(s: &str) -> Result<CheckKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Validated settings shared by the sampled checks.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub samples: usize,
    pub fd_step: f64,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl RunConfig {
    pub fn from_args(args: &SamplingArgs, env_seed: Option<&str>) -> crate::Result<Self> {
        if args.samples == 0 {
            return Err(Error::InvalidInput("--samples must be at least 1".into()));
        }
        if !(args.fd_step > 0.0) || !args.fd_step.is_finite() {
            return Err(Error::InvalidInput(format!("--fd must be positive, got {}", args.fd_step)));
        }
        let seed = match (args.seed, env_seed) {
            (Some(s), _) => s,
            (None, Some(v)) => v.trim().parse::<u64>().map_err(|_| {
                Error::InvalidInput(format!("{} must be an unsigned integer, got {:?}", SEED_ENV, v))
            })?,
            (None, None) => DEFAULT_SEED,
        };
        let mut tolerances = Tolerances::default();
        for (k, v) in &args.tolerance {
            tolerances.set(k, *v)?;
        }
        Ok(RunConfig {
            samples: args.samples,
            fd_step: args.fd_step,
            seed,
            tolerances,
        })
    }
}

/// Result of one invocation: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(err: &Error) -> Self {
        Outcome {
            code: exit_code(err),
            stdout: String::new(),
            stderr: format!("error: {}\n", err),
        }
    }
}

/// Exit code for an error that aborted a command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NumericalFailure { .. } | Error::Conditioning(_) => EXIT_NUMERICAL,
        Error::InvarianceViolation { .. } | Error::AssemblyIdentityViolation { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Parse `args` (program name first) and run the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_seed = std::env::var(SEED_ENV).ok();
    execute_with_env(args, env_seed.as_deref())
}

/// As [`execute`] with the seed fallback passed in instead of read from the
/// environment.
pub fn execute_with_env<I, T>(args: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(a, env_seed),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Geometry(a) => commands::geometry(a),
        Command::Oracle(a) => commands::oracle(a, env_seed),
        Command::Catalog(a) => commands::catalog(a),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}
