#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use levinson_core::model::shooting_residual_default;
use levinson_core::winding::{verify_levinson_with, VerifyOptions, DEFAULT_INITIAL_PANELS};
use levinson_core::{eigen_modes, Complex64};
use levinson_cli::report::{render_record, render_spectrum, to_json};
use levinson_cli::scan::{scan, write_scan_csv};
use levinson_cli::sweep::{run_sweep, write_sweep_csv};
use levinson_cli::trace::{trace_rows, write_trace_csv};
use levinson_cli::{exit, guarded_params, parse_complex, CliError, CliResult, SweepConfig, DEFAULT_MARGIN};
use serde::Serialize;

/// Residual above which `spectrum --check` reports a mismatch.
const SHOOTING_TOL: f64 = 1e-5;

#[derive(Parser)]
#[command(name = "levinson", version, about = "Winding-number checks for inverse-square operators with complex boundary data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the boundary winding with the eigenvalue count at one point.
    Verify {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        json: bool,
    },
    /// Verify every point of a parameter grid; writes one CSV row per point.
    Sweep {
        #[command(flatten)]
        batch: Batch,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List the eigenvalues `E_n = −k_n²`.
    Spectrum {
        #[command(flatten)]
        point: Point,
        /// Certify each mode by ODE shooting.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Export the boundary symbol and its unwrapped phase as CSV.
    Trace {
        #[command(flatten)]
        point: Point,
        /// Initial panels per edge before adaptive refinement.
        #[arg(long, default_value_t = DEFAULT_INITIAL_PANELS)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit exceptional κ curves for each m of the configured grid.
    ExceptionalScan {
        #[command(flatten)]
        batch: Batch,
    },
}

#[derive(Args)]
struct Point {
    /// Order m as `re,im` or `re`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    m: Complex64,
    /// Boundary parameter κ as `re,im` or `re`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    kappa: Complex64,
}

#[derive(Args)]
struct Batch {
    /// JSON sweep configuration; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads, overriding the config (0 = all cores).
    #[arg(long)]
    parallel: Option<usize>,
}

impl Batch {
    fn load(&self) -> CliResult<(SweepConfig, usize)> {
        let config = match &self.config {
            Some(path) => SweepConfig::from_path(path)?,
            None => SweepConfig::default(),
        };
        let threads = self.parallel.unwrap_or(config.parallelism);
        Ok((config, threads))
    }
}

fn with_output<F>(out: Option<&Path>, write: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> CliResult<()>,
{
    match out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write(&mut file)?;
            file.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
        }
    }
    Ok(())
}

/// Writes to stdout, surfacing a closed pipe as an error instead of a panic.
fn emit(text: &str) -> CliResult<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    lock.write_all(text.as_bytes())?;
    lock.flush()?;
    Ok(())
}

fn verify(point: &Point, json: bool) -> CliResult<i32> {
    let p = guarded_params(point.m, point.kappa, DEFAULT_MARGIN)?;
    let record = verify_levinson_with(&p, &VerifyOptions::default())?;
    if json {
        eprint!("{}", render_record(&record));
        emit(&format!("{}\n", to_json(&record)?))?;
    } else {
        emit(&render_record(&record))?;
    }
    Ok(if record.theorem_ok { exit::OK } else { exit::MISMATCH })
}

fn sweep(batch: &Batch, json: bool) -> CliResult<i32> {
    let (config, threads) = batch.load()?;
    let (rows, summary) = run_sweep(&config, threads)?;
    with_output(batch.out.as_deref(), |w| write_sweep_csv(&rows, w))?;
    let text = if json {
        to_json(&summary)?
    } else {
        format!(
            "points {}  skipped {}  theorem failures {}  corollary failures {}  errors {}  max integrality {:.3e}  time {:.2}s",
            summary.total_points,
            summary.skipped_exceptional,
            summary.theorem_failures,
            summary.corollary_failures,
            summary.errors,
            summary.max_integrality_residual,
            summary.wall_time
        )
    };
    if batch.out.is_some() {
        emit(&format!("{text}\n"))?;
    } else {
        eprintln!("{text}");
    }
    Ok(if summary.failure_count() == 0 { exit::OK } else { exit::MISMATCH })
}

#[derive(Serialize)]
struct SpectrumOutput<'a> {
    #[serde(flatten)]
    report: &'a levinson_core::SpectrumReport,
    residuals: Option<Vec<Option<f64>>>,
    max_residual: Option<f64>,
}

fn spectrum(point: &Point, check: bool, json: bool) -> CliResult<i32> {
    let p = guarded_params(point.m, point.kappa, DEFAULT_MARGIN)?;
    let report = eigen_modes(&p)?;
    let residuals: Option<Vec<Option<f64>>> = check.then(|| {
        report
            .modes
            .iter()
            .map(|mode| match shooting_residual_default(&p, mode.k) {
                Ok(r) => Some(r.norm()),
                Err(e) => {
                    log::warn!("shooting failed for n = {}: {e}", mode.n);
                    None
                }
            })
            .collect()
    });
    let max_residual = residuals.as_ref().map(|r| r.iter().map(|v| v.unwrap_or(f64::INFINITY)).fold(0.0, f64::max));
    if json {
        emit(&format!("{}\n", to_json(&SpectrumOutput { report: &report, residuals: residuals.clone(), max_residual })?))?;
    } else {
        let mut text = render_spectrum(&report, residuals.as_deref());
        if let Some(max) = max_residual {
            text.push_str(&format!("max shooting residual {max:.3e}\n"));
        }
        emit(&text)?;
    }
    Ok(match max_residual {
        Some(max) if !(max < SHOOTING_TOL) => exit::MISMATCH,
        _ => exit::OK,
    })
}

fn trace(point: &Point, samples: usize, out: Option<&Path>) -> CliResult<i32> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let p = guarded_params(point.m, point.kappa, DEFAULT_MARGIN)?;
    let rows = trace_rows(&p, samples)?;
    with_output(out, |w| write_trace_csv(&rows, w))?;
    Ok(exit::OK)
}

fn exceptional_scan(batch: &Batch) -> CliResult<i32> {
    let (config, threads) = batch.load()?;
    let points = scan(&config, threads)?;
    with_output(batch.out.as_deref(), |w| write_scan_csv(&points, w))?;
    Ok(exit::OK)
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Verify { point, json } => verify(&point, json),
        Command::Sweep { batch, json } => sweep(&batch, json),
        Command::Spectrum { point, check, json } => spectrum(&point, check, json),
        Command::Trace { point, samples, out } => trace(&point, samples, out.as_deref()),
        Command::ExceptionalScan { batch } => exceptional_scan(&batch),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LEVINSON_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::REFUSED_OR_USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("levinson: {e}");
            ExitCode::from(exit::REFUSED_OR_USAGE as u8)
        }
    }
}
