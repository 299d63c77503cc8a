//! Argument parsing and command dispatch for the `sopq` binary.
//!
//! Exit codes: 0 success, 1 tolerance violation, 2 input or validation
//! error, 3 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sopq_core::dist::{transform_coefficients, MultiIndex};
use sopq_core::horn::{evaluate_horn, validate_spec, HornSeriesSpec};
use sopq_core::spherical::{AssocIndex, GroupSignature, SpecialGroup};
use sopq_core::Error;

use crate::acceptance;
use crate::formats::{BetaFile, DistOutput, HornSpecFile};
use crate::grid::{
    assoc_grid, classify, compare_grid, parse_sigma, zonal_grid, AlphaRange, AssocMethod, CompareOptions,
    FailureKind, GridRequest, ZonalMethod,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_TOLERANCE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "sopq", version, about = "Spherical functions of SO0(p,q) by series and quadrature")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zonal function over a σ × α grid.
    ///
    /// CSV columns: p, q, sigma_re, sigma_im, alpha, re, im, tail_estimate,
    /// terms_used, error. A failed point leaves its value columns empty and
    /// fills `error`; the grid is still completed.
    Zonal(ZonalArgs),
    /// Associated function over a σ × α grid for one (ν, r, s).
    ///
    /// CSV columns: p, q, nu, r, s, lambda, mu, sigma_re, sigma_im, alpha,
    /// re, im, tail_estimate, terms_used, error.
    Assoc(AssocArgs),
    /// Series against the quadrature oracle; exits 1 if any point misses
    /// the tolerance.
    ///
    /// CSV columns: p, q, lambda, mu, sigma_re, sigma_im, alpha, series_re,
    /// series_im, oracle_re, oracle_im, oracle_nodes, abs_diff, rel_diff,
    /// pass, error.
    Compare(CompareArgs),
    /// Evaluates a Horn series described by a JSON file.
    Horn(HornArgs),
    /// Coefficient table for a delta-derivative under a change of
    /// defining functions, as JSON.
    Dist(DistArgs),
    /// Runs the acceptance criteria and prints one line per criterion.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    So41,
    So32,
    So42,
}

impl From<GroupArg> for SpecialGroup {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::So41 => SpecialGroup::So41,
            GroupArg::So32 => SpecialGroup::So32,
            GroupArg::So42 => SpecialGroup::So42,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZonalMethodArg {
    Series,
    Horn,
    ClosedForm,
    Special,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AssocMethodArg {
    Series,
    Horn,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Complex σ as `re,im`; repeat for several. Defaults to the principal
    /// series point -(p+q-2)/2.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Vec<String>,
    /// `start:stop:count` (inclusive) or a single value.
    #[arg(long, default_value = "0:1:11")]
    pub alpha: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ZonalArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
    /// Low-dimensional group with its own formula; sets p and q.
    #[arg(long, value_enum)]
    pub group: Option<GroupArg>,
    #[arg(long, value_enum)]
    pub method: Option<ZonalMethodArg>,
}

#[derive(Debug, Clone, Args)]
pub struct IndexArgs {
    #[arg(long)]
    pub nu: Option<u8>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
}

impl IndexArgs {
    fn given(&self) -> bool {
        self.nu.is_some() || self.r.is_some() || self.s.is_some()
    }

    fn index(&self) -> Result<AssocIndex, CliError> {
        AssocIndex::new(self.nu.unwrap_or(0), self.r.unwrap_or(0), self.s.unwrap_or(0)).map_err(CliError::from)
    }
}

#[derive(Debug, Clone, Args)]
pub struct AssocArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub index: IndexArgs,
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "series")]
    pub method: AssocMethodArg,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Compare the associated function for this (ν, r, s) instead of the
    /// zonal one.
    #[command(flatten)]
    pub index: IndexArgs,
    /// Relative tolerance each point must meet.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Largest quadrature node count per side.
    #[arg(long, default_value_t = 4096)]
    pub oracle_n: usize,
    /// Multiplies series values by `1 + factor` (harness self-check).
    #[arg(long, hide = true, allow_hyphen_values = true)]
    pub corrupt_series: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct HornArgs {
    /// JSON file with `variables`, `numerator` and `denominator`.
    #[arg(long)]
    pub spec: PathBuf,
    /// Argument vector, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    #[arg(long, default_value_t = sopq_core::DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
}

#[derive(Debug, Clone, Args)]
pub struct DistArgs {
    /// JSON file holding β as an array of rows or as `{"beta": rows}`.
    #[arg(long)]
    pub beta: PathBuf,
    /// Derivative orders, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    /// Run only this criterion.
    #[arg(long)]
    pub criterion: Option<u8>,
}

/// Failure that ends a command with the given exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: code_for(classify(&e)),
            message: e.to_string(),
        }
    }
}

fn code_for(kind: FailureKind) -> u8 {
    match kind {
        FailureKind::Input => EXIT_INPUT,
        FailureKind::Numerical => EXIT_NUMERICAL,
    }
}

/// Exit code for a set of per-row failures: the most severe wins.
fn worst_code(failures: impl Iterator<Item = Option<FailureKind>>) -> u8 {
    failures.flatten().map(code_for).max().unwrap_or(EXIT_OK)
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::input(format!("write failed: {e}"))
}

fn signature(p: Option<u32>, q: Option<u32>) -> Result<GroupSignature, CliError> {
    match (p, q) {
        (Some(p), Some(q)) => GroupSignature::new(p, q).map_err(CliError::from),
        _ => Err(CliError::input("both --p and --q are required")),
    }
}

fn request(grid: &GridArgs, sig: GroupSignature, indices: Vec<AssocIndex>, tol: f64) -> Result<GridRequest, CliError> {
    let sigmas = if grid.sigma.is_empty() {
        vec![sig.principal_sigma(0.0)]
    } else {
        grid.sigma.iter().map(|s| parse_sigma(s)).collect::<Result<_, _>>().map_err(CliError::input)?
    };
    let req = GridRequest {
        signature: sig,
        sigmas,
        alphas: AlphaRange::parse(&grid.alpha).map_err(CliError::input)?,
        indices,
        tol,
    };
    req.validate().map_err(CliError::input)?;
    Ok(req)
}

fn emit<T: Serialize>(rows: &[T], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows).map_err(|e| CliError::input(e.to_string()))?;
            writeln!(out).map_err(io_err)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r).map_err(|e| CliError::input(e.to_string()))?;
            }
            w.flush().map_err(io_err)
        }
    }
}

fn cmd_zonal(args: &ZonalArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let (sig, method) = match args.group {
        Some(g) => {
            let group = SpecialGroup::from(g);
            let sig = group.signature();
            if args.grid.p.is_some_and(|p| p != sig.p()) || args.grid.q.is_some_and(|q| q != sig.q()) {
                return Err(CliError::input("--group conflicts with --p/--q"));
            }
            let method = match args.method.unwrap_or(ZonalMethodArg::Special) {
                ZonalMethodArg::Special => ZonalMethod::Special(group),
                ZonalMethodArg::Series => ZonalMethod::Series,
                ZonalMethodArg::Horn => ZonalMethod::Horn,
                ZonalMethodArg::ClosedForm => ZonalMethod::ClosedForm,
            };
            (sig, method)
        }
        None => {
            let sig = signature(args.grid.p, args.grid.q)?;
            let method = match args.method.unwrap_or(ZonalMethodArg::Series) {
                ZonalMethodArg::Series => ZonalMethod::Series,
                ZonalMethodArg::Horn => ZonalMethod::Horn,
                ZonalMethodArg::ClosedForm => ZonalMethod::ClosedForm,
                ZonalMethodArg::Special => return Err(CliError::input("--method special needs --group")),
            };
            (sig, method)
        }
    };
    let req = request(&args.grid, sig, vec![], args.tol)?;
    let rows = zonal_grid(&req, method);
    emit(&rows, args.grid.format, out)?;
    Ok(worst_code(rows.iter().map(|r| r.failure)))
}

fn cmd_assoc(args: &AssocArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let sig = signature(args.grid.p, args.grid.q)?;
    let req = request(&args.grid, sig, vec![args.index.index()?], args.tol)?;
    let method = match args.method {
        AssocMethodArg::Series => AssocMethod::Series,
        AssocMethodArg::Horn => AssocMethod::Horn,
    };
    let rows = assoc_grid(&req, method);
    emit(&rows, args.grid.format, out)?;
    Ok(worst_code(rows.iter().map(|r| r.failure)))
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let sig = signature(args.grid.p, args.grid.q)?;
    let indices = if args.index.given() { vec![args.index.index()?] } else { vec![] };
    let req = request(&args.grid, sig, indices, args.tol)?;
    if args.oracle_n < 16 {
        return Err(CliError::input("--oracle-n must be at least 16"));
    }
    let opts = CompareOptions {
        oracle_n: args.oracle_n,
        oracle_tol: (args.tol * 1e-3).max(1e-14),
        corrupt: args.corrupt_series,
    };
    let rows = compare_grid(&req, opts);
    emit(&rows, args.grid.format, out)?;
    let failed = worst_code(rows.iter().map(|r| r.failure));
    if failed != EXIT_OK {
        return Ok(failed);
    }
    Ok(if rows.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_TOLERANCE })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
struct HornReport {
    re: f64,
    im: f64,
    tail_estimate: f64,
    terms_used: usize,
    converged: bool,
}

fn cmd_horn(args: &HornArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let file: HornSpecFile = read_json(&args.spec)?;
    let spec = HornSeriesSpec::from(&file);
    let report = validate_spec(&spec);
    if !report.is_valid() {
        for (j, v) in report.variables.iter().enumerate() {
            writeln!(
                err,
                "variable {j}: numerator sum {}, denominator sum {} ({})",
                v.numerator_sum,
                v.denominator_sum,
                if v.balanced { "balanced" } else { "unbalanced" }
            )
            .map_err(io_err)?;
        }
        for p in &report.problems {
            writeln!(err, "problem: {p}").map_err(io_err)?;
        }
        return Err(CliError::input("spec failed validation"));
    }
    if args.x.len() != spec.variables {
        return Err(CliError::input(format!(
            "spec has {} variables but {} arguments were given",
            spec.variables,
            args.x.len()
        )));
    }
    let v = evaluate_horn(&spec, &args.x, args.tol, args.max_terms)?;
    let report = HornReport {
        re: v.value.re,
        im: v.value.im,
        tail_estimate: v.tail_estimate,
        terms_used: v.terms_used,
        converged: v.converged,
    };
    serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| CliError::input(e.to_string()))?;
    writeln!(out).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_dist(args: &DistArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let beta: BetaFile = read_json(&args.beta)?;
    let beta = beta.to_matrix()?;
    let table = transform_coefficients(&beta, &MultiIndex::new(args.q.clone())?)?;
    serde_json::to_writer_pretty(&mut *out, &DistOutput::from(&table)).map_err(|e| CliError::input(e.to_string()))?;
    writeln!(out).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_selftest(args: &SelftestArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let reports = match args.criterion {
        Some(id @ 1..=9) => vec![acceptance::run_criterion(id)],
        Some(id) => return Err(CliError::input(format!("no criterion {id}; choose 1 to 9"))),
        None => acceptance::run_all(),
    };
    for r in &reports {
        writeln!(out, "{}", r.line()).map_err(io_err)?;
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} criteria passed", reports.len()).map_err(io_err)?;
    Ok(if passed == reports.len() { EXIT_OK } else { EXIT_TOLERANCE })
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Zonal(a) => cmd_zonal(a, out),
        Command::Assoc(a) => cmd_assoc(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Horn(a) => cmd_horn(a, out, err),
        Command::Dist(a) => cmd_dist(a, out),
        Command::Selftest(a) => cmd_selftest(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("sopq").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_flag_is_an_input_error() {
        assert_eq!(run_str(&["zonal", "--bogus"]).0, EXIT_INPUT);
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = run_str(&["zonal", "--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("tail_estimate"));
    }

    #[test]
    fn missing_signature_is_reported() {
        let (code, _, err) = run_str(&["zonal", "--alpha", "0.5"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("--p"));
    }

    #[test]
    fn group_conflict() {
        assert_eq!(run_str(&["zonal", "--group", "so32", "--p", "4", "--q", "2"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["zonal", "--p", "4", "--q", "2", "--method", "special"]).0, EXIT_INPUT);
    }

    #[test]
    fn numerical_failure_code() {
        let (code, out, _) = run_str(&["zonal", "--p", "3", "--q", "2", "--alpha", "3", "--sigma", "0,0"]);
        assert_eq!(code, EXIT_NUMERICAL);
        assert!(out.lines().count() == 2);
    }

    #[test]
    fn compare_zero_sigma_row() {
        let (code, out, _) = run_str(&["compare", "--p", "3", "--q", "2", "--sigma", "0,0", "--alpha", "0.4", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
        assert!(rows[0]["abs_diff"].as_f64().unwrap() < 1e-14);
    }
}
