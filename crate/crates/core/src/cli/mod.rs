//! The `dirac-su3` command line.
//!
//! Subcommands are `spectrum`, `action`, `expansion`, `residuals` and
//! `verify`. Defaults for most flags can be placed in a TOML file passed with
//! `--config`; flags given on the command line win.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
//! non-convergence.

mod output;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::Error;
use crate::euler_maclaurin::{EmConfig, DEFAULT_EM_ORDER};
use crate::numerics::{TestFunction, DEFAULT_TOL_2D};
use crate::rep_theory::{parse_rational, Rational};
use crate::spectral_action::{direct_action, em_action, expansion_action, residual_report};
use crate::spectrum::{build_spectrum, FamilyParam, Route};

pub use output::{ActionRecord, ActionRow, ExpansionRecord, ResidualRecord, SpectrumLineRecord, SpectrumRecord};
pub use verify::{run_suite, Check, Suite};

/// Truncation bound on the neglected tail of direct sums.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NON_CONVERGENCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "dirac-su3", version, about = "Dirac Laplacian spectra of SU(3) and their spectral action")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Merged spectrum of D_t² up to an eigenvalue cutoff.
    Spectrum(SpectrumArgs),
    /// Spectral action Tr f(D_t²/Λ²) by direct summation or Euler-Maclaurin.
    Action(ActionArgs),
    /// Four-term large-Λ expansion of the spectral action.
    Expansion(ExpansionArgs),
    /// Direct action minus expansion over a list of Λ, with the log-log slope.
    Residuals(ResidualArgs),
    /// Run verification suites and print PASS/FAIL per property.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Table,
    Principles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Em,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel parts.
    #[arg(long)]
    threads: Option<usize>,
    /// TOML file with flag defaults.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Family parameter as an integer or fraction n/d.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Test function: exp or plateau:a,b.
    #[arg(long = "fn", allow_hyphen_values = true)]
    function: Option<String>,
    /// Quadrature tolerance for coefficient and Euler-Maclaurin integrals.
    #[arg(long)]
    tol: Option<f64>,
    /// Bound on the neglected tail of direct sums.
    #[arg(long)]
    tail_tol: Option<f64>,
}

#[derive(Debug, Args)]
struct LambdaArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "lambdas")]
    lambda: Option<f64>,
    /// Comma-separated list of Λ values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambdas: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Eigenvalue cutoff, integer or fraction.
    #[arg(long, allow_hyphen_values = true)]
    lambda_max: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    route: RouteArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ActionArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    lambda: LambdaArgs,
    #[arg(long, value_enum, default_value = "direct")]
    method: Method,
    /// Euler-Maclaurin order m.
    #[arg(long)]
    em_order: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ExpansionArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    lambda: LambdaArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ResidualArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    lambda: LambdaArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Weight bound for the cg and spectrum suites, window for cover.
    #[arg(long)]
    max_weight: Option<i64>,
    #[command(flatten)]
    common: Common,
}

/// Flag defaults read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    t: Option<String>,
    #[serde(rename = "fn")]
    function: Option<String>,
    tol: Option<f64>,
    tail_tol: Option<f64>,
    em_order: Option<usize>,
    format: Option<Format>,
    threads: Option<usize>,
    lambda_max: Option<String>,
    lambdas: Option<Vec<f64>>,
    max_weight: Option<i64>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    NonConvergence(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } => Failure::NonConvergence(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns its
/// exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    ExitCode::from(run_to_code(args))
}

/// Like [`run`], with the exit code as a plain integer.
pub fn run_to_code<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_VERIFY_FAILED,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::NonConvergence(msg)) => {
            eprintln!("error: {msg}");
            EXIT_NON_CONVERGENCE
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Spectrum(args) => {
            let cfg = load_config(&args.common)?;
            with_threads(&args.common, &cfg, || cmd_spectrum(&args, &cfg))
        }
        Command::Action(args) => {
            let cfg = load_config(&args.common)?;
            with_threads(&args.common, &cfg, || cmd_action(&args, &cfg))
        }
        Command::Expansion(args) => {
            let cfg = load_config(&args.common)?;
            with_threads(&args.common, &cfg, || cmd_expansion(&args, &cfg))
        }
        Command::Residuals(args) => {
            let cfg = load_config(&args.common)?;
            with_threads(&args.common, &cfg, || cmd_residuals(&args, &cfg))
        }
        Command::Verify(args) => {
            let cfg = load_config(&args.common)?;
            with_threads(&args.common, &cfg, || cmd_verify(&args, &cfg))
        }
    }
}

fn load_config(common: &Common) -> Result<ConfigFile, Failure> {
    let Some(path) = &common.config else {
        return Ok(ConfigFile::default());
    };
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))
}

// Runs `body` on a dedicated pool when a thread count is configured.
fn with_threads<F>(common: &Common, cfg: &ConfigFile, body: F) -> Result<(), Failure>
where
    F: FnOnce() -> Result<(), Failure> + Send,
{
    match common.threads.or(cfg.threads) {
        None => body(),
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::Usage(format!("cannot start {n} threads: {e}")))?;
            pool.install(body)
        }
    }
}

fn parse_t(flag: &Option<String>, cfg: &ConfigFile) -> Result<FamilyParam, Failure> {
    let text = flag.as_ref().or(cfg.t.as_ref()).ok_or_else(|| Failure::Usage("--t is required".into()))?;
    let t = parse_rational(text).map_err(|e| Failure::Usage(format!("--t: {e}")))?;
    Ok(FamilyParam::new(t))
}

fn parse_function(flag: &Option<String>, cfg: &ConfigFile) -> Result<TestFunction, Failure> {
    let text = flag.as_ref().or(cfg.function.as_ref()).map(String::as_str).unwrap_or("exp");
    text.parse().map_err(|e: Error| Failure::Usage(format!("--fn: {e}")))
}

fn positive(name: &str, value: f64) -> Result<f64, Failure> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Failure::Usage(format!("{name} must be positive, got {value}")))
    }
}

fn tolerances(model: &ModelArgs, cfg: &ConfigFile) -> Result<(f64, f64), Failure> {
    let tol = positive("--tol", model.tol.or(cfg.tol).unwrap_or(DEFAULT_TOL_2D))?;
    let tail_tol = positive("--tail-tol", model.tail_tol.or(cfg.tail_tol).unwrap_or(DEFAULT_TAIL_TOL))?;
    Ok((tol, tail_tol))
}

fn lambda_list(args: &LambdaArgs, cfg: &ConfigFile) -> Result<Vec<f64>, Failure> {
    let list = match (args.lambda, &args.lambdas) {
        (Some(l), _) => vec![l],
        (None, Some(ls)) => ls.clone(),
        (None, None) => {
            cfg.lambdas.clone().ok_or_else(|| Failure::Usage("--lambda or --lambdas is required".into()))?
        }
    };
    if list.is_empty() {
        return Err(Failure::Usage("empty lambda list".into()));
    }
    Ok(list)
}

fn format_of(common: &Common, cfg: &ConfigFile) -> Format {
    common.format.or(cfg.format).unwrap_or(Format::Csv)
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_spectrum(args: &SpectrumArgs, cfg: &ConfigFile) -> Result<(), Failure> {
    let param = parse_t(&args.t, cfg)?;
    let text = args
        .lambda_max
        .as_ref()
        .or(cfg.lambda_max.as_ref())
        .ok_or_else(|| Failure::Usage("--lambda-max is required".into()))?;
    let lambda_max: Rational = parse_rational(text).map_err(|e| Failure::Usage(format!("--lambda-max: {e}")))?;
    let route = match args.route {
        RouteArg::Table => Route::Table,
        RouteArg::Principles => Route::Principles,
    };
    let spectrum = build_spectrum(&param, lambda_max, route)?;
    let record = SpectrumRecord::from_spectrum(&spectrum);
    emit(&args.common, &record.render(format_of(&args.common, cfg)))
}

fn cmd_action(args: &ActionArgs, cfg: &ConfigFile) -> Result<(), Failure> {
    let param = parse_t(&args.model.t, cfg)?;
    let f = parse_function(&args.model.function, cfg)?;
    let (tol, tail_tol) = tolerances(&args.model, cfg)?;
    let lambdas = lambda_list(&args.lambda, cfg)?;
    let rows = match args.method {
        Method::Direct => lambdas
            .iter()
            .map(|&lambda| Ok(ActionRow { lambda, value: direct_action(&param, lambda, &f, tail_tol)? }))
            .collect::<Result<Vec<_>, Error>>()?,
        Method::Em => {
            let m = args.em_order.or(cfg.em_order).unwrap_or(DEFAULT_EM_ORDER);
            let em = EmConfig::for_action(m)?.with_tolerances(tol, tol);
            lambdas
                .iter()
                .map(|&lambda| Ok(ActionRow { lambda, value: em_action(&param, lambda, &f, &em)? }))
                .collect::<Result<Vec<_>, Error>>()?
        }
    };
    let method = match args.method {
        Method::Direct => "direct",
        Method::Em => "em",
    };
    let record = ActionRecord::new(&param, &f, method, rows);
    emit(&args.common, &record.render(format_of(&args.common, cfg)))
}

fn cmd_expansion(args: &ExpansionArgs, cfg: &ConfigFile) -> Result<(), Failure> {
    let param = parse_t(&args.model.t, cfg)?;
    let f = parse_function(&args.model.function, cfg)?;
    let (tol, _) = tolerances(&args.model, cfg)?;
    let lambdas = lambda_list(&args.lambda, cfg)?;
    let rows =
        lambdas.iter().map(|&lambda| expansion_action(&param, lambda, &f, tol)).collect::<Result<Vec<_>, Error>>()?;
    let record = ExpansionRecord::new(&param, &f, rows);
    emit(&args.common, &record.render(format_of(&args.common, cfg)))
}

fn cmd_residuals(args: &ResidualArgs, cfg: &ConfigFile) -> Result<(), Failure> {
    let param = parse_t(&args.model.t, cfg)?;
    let f = parse_function(&args.model.function, cfg)?;
    let (tol, tail_tol) = tolerances(&args.model, cfg)?;
    let lambdas = lambda_list(&args.lambda, cfg)?;
    let report = residual_report(&param, &f, &lambdas, tail_tol, tol)?;
    let record = ResidualRecord::new(&param, &f, report);
    emit(&args.common, &record.render(format_of(&args.common, cfg)))
}

fn cmd_verify(args: &VerifyArgs, cfg: &ConfigFile) -> Result<(), Failure> {
    let max_weight = args.max_weight.or(cfg.max_weight);
    if let Some(n) = max_weight {
        if n < 1 {
            return Err(Failure::Usage(format!("--max-weight must be at least 1, got {n}")));
        }
    }
    let checks = run_suite(args.suite, max_weight);
    let text = match args.common.format.or(cfg.format) {
        Some(Format::Json) => output::checks_json(&checks),
        _ => checks.iter().map(|c| format!("{c}\n")).collect(),
    };
    emit(&args.common, &text)?;
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
