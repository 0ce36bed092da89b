use std::io::Write;

use levinson_core::symbol::{min_denominator, min_numerator};
use levinson_core::winding::GUARD_SAMPLES;
use levinson_core::{exceptional_kappa, is_exceptional, make_params, Branch, Complex64};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SweepConfig;
use crate::error::CliResult;
use crate::report::fmt_f64;

/// Threshold for the symbol-side cross-check of a scanned point.
pub const CROSS_MARK_LEVEL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub m: Complex64,
    pub branch: Branch,
    pub witness: i64,
    pub log_modulus: f64,
    pub kappa: Complex64,
    pub exceptional: bool,
    pub min_denominator: f64,
    pub min_numerator: f64,
    /// The symbol vanishes (zero branch) or blows up (pole branch) on `x > 0`.
    pub cross_mark: bool,
}

/// Exceptional `κ` curves for every `m` of the config grid, parameterized
/// by `ln|ς|` on both branches.
pub fn scan(config: &SweepConfig, threads: usize) -> CliResult<Vec<ScanPoint>> {
    config.validate()?;
    let s = config.scan;
    let moduli: Vec<f64> = if s.samples == 1 {
        vec![s.log_modulus_min]
    } else {
        (0..s.samples)
            .map(|i| s.log_modulus_min + (s.log_modulus_max - s.log_modulus_min) * i as f64 / (s.samples - 1) as f64)
            .collect()
    };
    let mut jobs = Vec::new();
    for m in config.m_grid.points() {
        for branch in [Branch::Pole, Branch::Zero] {
            for &l in &moduli {
                jobs.push((m, branch, l));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::error::CliError::Usage(format!("cannot build worker pool: {e}")))?;
    pool.install(|| {
        jobs.par_iter()
            .map(|&(m, branch, log_modulus)| {
                let (kappa, witness) = exceptional_kappa(m, log_modulus, branch)?;
                let p = make_params(m, kappa)?;
                let den = min_denominator(&p, GUARD_SAMPLES);
                let num = min_numerator(&p, GUARD_SAMPLES);
                let cross_mark = match branch {
                    Branch::Pole => den < CROSS_MARK_LEVEL,
                    Branch::Zero => num < CROSS_MARK_LEVEL,
                };
                Ok(ScanPoint {
                    m,
                    branch,
                    witness,
                    log_modulus,
                    kappa,
                    exceptional: is_exceptional(&p, config.exceptional_margin).exceptional,
                    min_denominator: den,
                    min_numerator: num,
                    cross_mark,
                })
            })
            .collect()
    })
}

pub const SCAN_HEADER: [&str; 11] = [
    "m_re",
    "m_im",
    "branch",
    "witness",
    "log_modulus",
    "kappa_re",
    "kappa_im",
    "exceptional",
    "min_denominator",
    "min_numerator",
    "cross_mark",
];

pub fn write_scan_csv<W: Write>(points: &[ScanPoint], out: W) -> CliResult<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(SCAN_HEADER)?;
    for pt in points {
        let branch = match pt.branch {
            Branch::Pole => "pole",
            Branch::Zero => "zero",
        };
        writer.write_record([
            fmt_f64(pt.m.re),
            fmt_f64(pt.m.im),
            branch.to_string(),
            pt.witness.to_string(),
            fmt_f64(pt.log_modulus),
            fmt_f64(pt.kappa.re),
            fmt_f64(pt.kappa.im),
            pt.exceptional.to_string(),
            fmt_f64(pt.min_denominator),
            fmt_f64(pt.min_numerator),
            pt.cross_mark.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
