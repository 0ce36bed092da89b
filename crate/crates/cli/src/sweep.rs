use std::io::Write;
use std::time::Instant;

use levinson_core::symbol::{min_denominator, min_numerator};
use levinson_core::winding::{verify_levinson_with, VerifyOptions, GUARD_SAMPLES};
use levinson_core::{is_exceptional, make_params, Complex64, ModelParams, VerificationRecord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{SweepConfig, Tolerances};
use crate::error::{CliError, CliResult};
use crate::report::fmt_f64;

/// Why a point was refused before winding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GuardReport {
    pub exceptional: bool,
    pub witness: Option<i64>,
    pub strip_distance: f64,
    pub min_denominator: f64,
    pub min_numerator: f64,
}

impl GuardReport {
    pub fn refused(&self, margin: f64) -> bool {
        self.exceptional || self.min_denominator < margin || self.min_numerator < margin
    }

    pub fn describe(&self) -> String {
        format!(
            "strip distance {:e}, min denominator {:e}, min numerator {:e}",
            self.strip_distance, self.min_denominator, self.min_numerator
        )
    }
}

pub fn guard(p: &ModelParams, margin: f64) -> GuardReport {
    let check = is_exceptional(p, margin);
    GuardReport {
        exceptional: check.exceptional,
        witness: check.witness,
        strip_distance: check.distance,
        min_denominator: min_denominator(p, GUARD_SAMPLES),
        min_numerator: min_numerator(p, GUARD_SAMPLES),
    }
}

/// Refuses parameters within `margin` of the exceptional locus.
pub fn guarded_params(m: Complex64, kappa: Complex64, margin: f64) -> CliResult<ModelParams> {
    let p = make_params(m, kappa)?;
    let report = guard(&p, margin);
    if report.refused(margin) {
        return Err(CliError::Refused(report.describe()));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    TheoremFailure,
    CorollaryFailure,
    SkippedExceptional,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::TheoremFailure => "theorem_failure",
            Status::CorollaryFailure => "corollary_failure",
            Status::SkippedExceptional => "skipped_exceptional",
            Status::Error => "error",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Status::TheoremFailure | Status::CorollaryFailure | Status::Error)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: usize,
    pub m: Complex64,
    pub kappa: Complex64,
    pub status: Status,
    pub record: Option<VerificationRecord>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub total_points: usize,
    pub skipped_exceptional: usize,
    pub theorem_failures: usize,
    pub corollary_failures: usize,
    pub errors: usize,
    pub max_integrality_residual: f64,
    pub wall_time: f64,
    /// Every failing row, with its full record when one was produced.
    pub failures: Vec<SweepRow>,
}

impl SweepSummary {
    pub fn failure_count(&self) -> usize {
        self.theorem_failures + self.corollary_failures + self.errors
    }
}

/// Grid points in row-major order (m real, m imaginary, κ real, κ imaginary),
/// with the configured jitter applied from a per-index ChaCha stream.
pub fn sweep_points(config: &SweepConfig) -> Vec<(Complex64, Complex64)> {
    let ms = config.m_grid.points();
    let kappas = config.kappa_grid.points();
    let (dm_re, dm_im) = config.m_grid.spacing();
    let (dk_re, dk_im) = config.kappa_grid.spacing();
    let mut out = Vec::with_capacity(ms.len() * kappas.len());
    for &m in &ms {
        for &kappa in &kappas {
            let index = out.len();
            if config.jitter > 0.0 {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(index as u64);
                let mut shift = |step: f64| config.jitter * step * (rng.gen::<f64>() - 0.5);
                let m = m + Complex64::new(shift(dm_re), shift(dm_im));
                let kappa = kappa + Complex64::new(shift(dk_re), shift(dk_im));
                out.push((m, kappa));
            } else {
                out.push((m, kappa));
            }
        }
    }
    out
}

pub fn evaluate_point(index: usize, m: Complex64, kappa: Complex64, margin: f64, tol: &Tolerances) -> SweepRow {
    let row = |status, record, error| SweepRow { index, m, kappa, status, record, error };
    let p = match make_params(m, kappa) {
        Ok(p) => p,
        Err(e) => return row(Status::Error, None, Some(e.to_string())),
    };
    if guard(&p, margin).refused(margin) {
        return row(Status::SkippedExceptional, None, None);
    }
    match verify_levinson_with(&p, &VerifyOptions::default()) {
        Ok(record) => {
            let status = if !record.theorem_ok || record.winding.integrality_residual >= tol.integer_tol {
                Status::TheoremFailure
            } else if record.corollary_residual.is_some_and(|r| r >= tol.corollary_tol) {
                Status::CorollaryFailure
            } else {
                Status::Ok
            };
            row(status, Some(record), None)
        }
        Err(e) => row(Status::Error, None, Some(e.to_string())),
    }
}

/// Evaluates every grid point on a pool of `threads` workers (0 = all
/// cores); rows come back in grid order.
pub fn run_sweep(config: &SweepConfig, threads: usize) -> CliResult<(Vec<SweepRow>, SweepSummary)> {
    config.validate()?;
    let start = Instant::now();
    let points = sweep_points(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build worker pool: {e}")))?;
    let rows: Vec<SweepRow> = pool.install(|| {
        points
            .par_iter()
            .enumerate()
            .map(|(i, &(m, kappa))| evaluate_point(i, m, kappa, config.exceptional_margin, &config.tolerances))
            .collect()
    });
    let count = |status: Status| rows.iter().filter(|r| r.status == status).count();
    let summary = SweepSummary {
        total_points: rows.len(),
        skipped_exceptional: count(Status::SkippedExceptional),
        theorem_failures: count(Status::TheoremFailure),
        corollary_failures: count(Status::CorollaryFailure),
        errors: count(Status::Error),
        max_integrality_residual: rows
            .iter()
            .filter_map(|r| r.record.as_ref())
            .map(|r| r.winding.integrality_residual)
            .fold(0.0, f64::max),
        wall_time: start.elapsed().as_secs_f64(),
        failures: rows.iter().filter(|r| r.status.is_failure()).cloned().collect(),
    };
    log::info!(
        "sweep: {} points, {} skipped, {} failures in {:.2}s",
        summary.total_points,
        summary.skipped_exceptional,
        summary.failure_count(),
        summary.wall_time
    );
    Ok((rows, summary))
}

pub const SWEEP_HEADER: [&str; 16] = [
    "m_re",
    "m_im",
    "kappa_re",
    "kappa_im",
    "count",
    "winding_total",
    "w1",
    "w2",
    "w3",
    "w4",
    "corollary_lhs",
    "integrality_residual",
    "corollary_residual",
    "edge1_residual",
    "edge3_residual",
    "status",
];

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> CliResult<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(SWEEP_HEADER)?;
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for row in rows {
        let mut fields = vec![fmt_f64(row.m.re), fmt_f64(row.m.im), fmt_f64(row.kappa.re), fmt_f64(row.kappa.im)];
        match &row.record {
            Some(r) => {
                fields.push(r.spectrum_count.to_string());
                fields.push(fmt_f64(r.winding.total));
                fields.extend(r.winding.w.iter().map(|&w| fmt_f64(w)));
                fields.push(fmt_f64(r.corollary_lhs));
                fields.push(fmt_f64(r.winding.integrality_residual));
                fields.push(opt(r.corollary_residual));
                fields.push(opt(r.edge_reference_residuals.map(|e| e.0)));
                fields.push(opt(r.edge_reference_residuals.map(|e| e.1)));
            }
            None => fields.extend(std::iter::repeat_n(String::new(), 11)),
        }
        fields.push(row.status.as_str().to_string());
        writer.write_record(&fields)?;
    }
    writer.flush()?;
    Ok(())
}
