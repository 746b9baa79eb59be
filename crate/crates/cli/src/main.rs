//! `tcn`: verify condition-number brackets of analytic Toeplitz matrices,
//! build extremal matrices and search for large inverse norms.
//!
//! Exit codes: 0 success, 1 verification or numerical failure, 2 usage or
//! domain error.

mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use tcn_core::bounds::{self, SweepReport};
use tcn_core::model::{self, ExtremalityReport};
use tcn_core::search::{self, RemarkReport, SearchConfig, SearchResult};
use tcn_core::{linalg, DenseMatrix};

use grid::{parse_list, RadiusGrid};
use output::{emit, records_csv, sig17};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<tcn_core::Error> for CliError {
    fn from(e: tcn_core::Error) -> Self {
        match e {
            tcn_core::Error::Domain(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failure(format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failure(format!("json error: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "tcn", version, about = "Condition numbers of analytic Toeplitz matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
struct Common {
    /// Seed of the search restarts.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of search restarts.
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    /// Coordinate moves per restart.
    #[arg(long, default_value_t = 2000)]
    iters: usize,
    /// Circle samples for the model-operator quadrature.
    #[arg(long = "samples", short = 'm', default_value_t = model::DEFAULT_MODEL_SAMPLES)]
    samples: usize,
    /// Report file; stdout when omitted.
    #[arg(long, short = 'o')]
    #[serde(skip)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check max(rⁿ, 1 − rⁿ) ≤ rⁿ‖T_r⁻¹‖ ≤ 1 over an (n, r) grid.
    Verify {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// start:stop:step, endpoints strictly inside (0, 1).
        #[arg(long, default_value = "0.05:0.95:0.05")]
        r_grid: RadiusGrid,
        #[command(flatten)]
        common: Common,
    },
    /// Print T_r = b_r(Mₙ), or with --model the compressed shift whose zeros
    /// are r times the n-th roots of unity.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        model: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate the analytic-Toeplitz constant from below. Comma-separated
    /// lists for --n or --r produce a scan table.
    Search {
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print 1/rⁿ and the bracket endpoints.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: f64,
    },
}

#[derive(Serialize)]
struct ConfigEcho<'a> {
    command: &'a str,
    #[serde(flatten)]
    common: &'a Common,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    config: ConfigEcho<'a>,
    n_max: usize,
    r_grid: Vec<f64>,
    #[serde(flatten)]
    report: &'a SweepReport,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("TCN_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("TCN_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Failure(format!("thread pool: {e}")))
}

fn cmd_verify(n_max: usize, r_grid: &RadiusGrid, common: &Common) -> Result<ExitCode, CliError> {
    let radii = r_grid.values();
    let report = bounds::grid_sweep(n_max, &radii)?;
    let bytes = match common.format.unwrap_or(Format::Csv) {
        Format::Csv => records_csv(&report.records)?,
        Format::Json => {
            let doc = VerifyJson {
                config: ConfigEcho {
                    command: "verify",
                    common,
                },
                n_max,
                r_grid: radii,
                report: &report,
            };
            let mut v = serde_json::to_vec_pretty(&doc)?;
            v.push(b'\n');
            v
        }
    };
    emit(common.output.as_deref(), &bytes)?;
    for f in &report.failures {
        eprintln!("error at n = {}, r = {}: {}", f.n, f.r, f.message);
    }
    let failed: Vec<_> = report.records.iter().filter(|r| !r.pass).collect();
    for rec in &failed {
        eprintln!(
            "FAIL n = {} r = {}: scaled {} outside [{}, {}]",
            rec.n, rec.r, rec.scaled, rec.lower, rec.upper
        );
    }
    if failed.is_empty() && report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} of {} grid points failed", failed.len(), report.records.len());
        Ok(ExitCode::from(1))
    }
}

#[derive(Serialize)]
struct ExtremalJson<'a> {
    config: ConfigEcho<'a>,
    n: usize,
    r: f64,
    model: bool,
    /// Rows of `[re, im]` pairs.
    matrix: Vec<Vec<[f64; 2]>>,
    norm_t: f64,
    inv_norm: f64,
    scaled: f64,
    kronecker: f64,
    extremality: Option<&'a ExtremalityReport>,
}

fn matrix_rows(a: &DenseMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|c| [c.re, c.im]).collect())
        .collect()
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        format!("{}{:+}i", c.re, c.im)
    }
}

fn cmd_extremal(n: usize, r: f64, use_model: bool, common: &Common) -> Result<ExitCode, CliError> {
    let kronecker = bounds::kronecker_bound(n, r)?;
    if !(r < 1.0) {
        return Err(CliError::Usage(format!("r = {r} is not in (0, 1)")));
    }
    let (matrix, extremality) = if use_model {
        let zeros = model::roots_of_unity_zeros(n, r);
        let op = model::model_operator(&zeros, common.samples)?;
        let report = model::extremality_of(&op, r)?;
        (op.matrix().clone(), Some(report))
    } else {
        (bounds::build_t_r(n, r)?.to_dense(), None)
    };
    let norm_t = linalg::norm2(&matrix)?;
    let inv_norm = linalg::inverse_norm(&matrix)?;
    let scaled = r.powi(n as i32) * inv_norm;

    let bytes = match common.format {
        None => {
            let mut s = String::new();
            let label = if use_model { "model operator M_B" } else { "T_r = b_r(M_n)" };
            s += &format!("{label}, n = {n}, r = {r}\n");
            for i in 0..matrix.rows() {
                let row: Vec<String> = matrix.row(i).iter().map(|&c| fmt_complex(c)).collect();
                s += &format!("  [{}]\n", row.join(", "));
            }
            s += &format!("norm_T = {norm_t}\ninv_norm = {inv_norm}\nscaled = {scaled}\nkronecker = {kronecker}\n");
            if let Some(rep) = &extremality {
                s += &format!(
                    "samples = {}\nrelative_gap = {:e}\ndefect_rank = {}\nextremal = {}\n",
                    rep.samples,
                    rep.relative_gap,
                    rep.defect_rank,
                    rep.is_extremal()
                );
            }
            s.into_bytes()
        }
        Some(Format::Json) => {
            let doc = ExtremalJson {
                config: ConfigEcho {
                    command: "extremal",
                    common,
                },
                n,
                r,
                model: use_model,
                matrix: matrix_rows(&matrix),
                norm_t,
                inv_norm,
                scaled,
                kronecker,
                extremality: extremality.as_ref(),
            };
            let mut v = serde_json::to_vec_pretty(&doc)?;
            v.push(b'\n');
            v
        }
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "r", "model", "norm_T", "inv_norm", "scaled", "kronecker"])?;
            w.write_record([
                n.to_string(),
                sig17(r),
                use_model.to_string(),
                sig17(norm_t),
                sig17(inv_norm),
                sig17(scaled),
                sig17(kronecker),
            ])?;
            w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?
        }
    };
    emit(common.output.as_deref(), &bytes)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SearchJson<'a> {
    config: ConfigEcho<'a>,
    #[serde(flatten)]
    result: &'a SearchResult,
}

#[derive(Serialize)]
struct ScanJson<'a> {
    config: ConfigEcho<'a>,
    #[serde(flatten)]
    report: &'a RemarkReport,
}

fn cmd_search(n: &str, r: &str, common: &Common) -> Result<ExitCode, CliError> {
    let ns: Vec<usize> = parse_list(n).map_err(CliError::Usage)?;
    let rs: Vec<f64> = parse_list(r).map_err(CliError::Usage)?;
    let config = SearchConfig {
        seed: common.seed,
        restarts: common.restarts,
        iterations: common.iters,
        ..SearchConfig::default()
    };
    let echo = ConfigEcho {
        command: "search",
        common,
    };
    let format = common.format.unwrap_or(Format::Json);
    let bytes = if let ([n], [r]) = (ns.as_slice(), rs.as_slice()) {
        let result = search::estimate_t_a(*n, *r, &config)?;
        if result.budget_exhausted {
            eprintln!("warning: iteration budget exhausted before the step converged; result is partial");
        }
        match format {
            Format::Json => {
                let mut v = serde_json::to_vec_pretty(&SearchJson {
                    config: echo,
                    result: &result,
                })?;
                v.push(b'\n');
                v
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record([
                    "n",
                    "r",
                    "best_value",
                    "scaled_value",
                    "kronecker_gap",
                    "seed_value",
                    "best_restart",
                    "restarts",
                    "seed",
                    "budget_exhausted",
                ])?;
                w.write_record([
                    result.n.to_string(),
                    sig17(result.r),
                    sig17(result.best_value),
                    sig17(result.scaled_value),
                    sig17(result.kronecker_gap),
                    sig17(result.seed_value),
                    result.best_restart.to_string(),
                    result.restarts_used.to_string(),
                    result.seed.to_string(),
                    result.budget_exhausted.to_string(),
                ])?;
                w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?
            }
        }
    } else {
        let report = search::remark_scan(&ns, &rs, &config)?;
        match format {
            Format::Json => {
                let mut v = serde_json::to_vec_pretty(&ScanJson {
                    config: echo,
                    report: &report,
                })?;
                v.push(b'\n');
                v
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["n", "r", "estimate", "scaled", "gap"])?;
                for row in &report.rows {
                    w.write_record([
                        row.n.to_string(),
                        sig17(row.r),
                        sig17(row.estimate),
                        sig17(row.scaled),
                        sig17(row.gap),
                    ])?;
                }
                w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?
            }
        }
    };
    emit(common.output.as_deref(), &bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_bound(n: usize, r: f64) -> Result<ExitCode, CliError> {
    let kronecker = bounds::kronecker_bound(n, r)?;
    let (lower, upper) = bounds::bracket(n, r)?;
    println!("kronecker={kronecker} lower={lower} upper={upper}");
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Verify {
            n_max,
            r_grid,
            common,
        } => cmd_verify(*n_max, r_grid, common),
        Command::Extremal { n, r, model, common } => cmd_extremal(*n, *r, *model, common),
        Command::Search { n, r, common } => cmd_search(n, r, common),
        Command::Bound { n, r } => cmd_bound(*n, *r),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
