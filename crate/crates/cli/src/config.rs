use std::path::Path;

use levinson_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Rectangular grid in the complex plane, `steps` points per axis with both
/// ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub re_min: f64,
    pub re_max: f64,
    pub re_steps: usize,
    pub im_min: f64,
    pub im_max: f64,
    pub im_steps: usize,
}

fn axis(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..steps).map(|i| min + (max - min) * i as f64 / (steps - 1) as f64).collect(),
    }
}

fn spacing(min: f64, max: f64, steps: usize) -> f64 {
    if steps > 1 {
        (max - min) / (steps - 1) as f64
    } else {
        0.0
    }
}

impl Grid {
    pub fn re_axis(&self) -> Vec<f64> {
        axis(self.re_min, self.re_max, self.re_steps)
    }

    pub fn im_axis(&self) -> Vec<f64> {
        axis(self.im_min, self.im_max, self.im_steps)
    }

    /// Grid points, real part outermost.
    pub fn points(&self) -> Vec<Complex64> {
        let im = self.im_axis();
        self.re_axis().into_iter().flat_map(|re| im.iter().map(move |&im| Complex64::new(re, im))).collect()
    }

    /// `(Δre, Δim)`; zero on single-point axes.
    pub fn spacing(&self) -> (f64, f64) {
        (spacing(self.re_min, self.re_max, self.re_steps), spacing(self.im_min, self.im_max, self.im_steps))
    }

    fn validate(&self, name: &str) -> CliResult<()> {
        let values = [self.re_min, self.re_max, self.im_min, self.im_max];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Config(format!("{name}: bounds must be finite")));
        }
        if self.re_steps == 0 || self.im_steps == 0 {
            return Err(CliError::Config(format!("{name}: step counts must be positive")));
        }
        if self.re_min > self.re_max || self.im_min > self.im_max {
            return Err(CliError::Config(format!("{name}: min exceeds max")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub integer_tol: f64,
    pub corollary_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { integer_tol: 1e-6, corollary_tol: 1e-6 }
    }
}

/// Range of `ln|ς|` swept along each exceptional branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSettings {
    pub log_modulus_min: f64,
    pub log_modulus_max: f64,
    pub samples: usize,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings { log_modulus_min: -3.0, log_modulus_max: 3.0, samples: 25 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub m_grid: Grid,
    pub kappa_grid: Grid,
    pub exceptional_margin: f64,
    pub tolerances: Tolerances,
    pub seed: u64,
    /// Worker threads; 0 picks the number of cores.
    pub parallelism: usize,
    /// Uniform jitter per point, as a fraction of the grid spacing.
    pub jitter: f64,
    pub scan: ScanSettings,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            m_grid: Grid { re_min: -0.9, re_max: 0.9, re_steps: 10, im_min: -1.5, im_max: 1.5, im_steps: 10 },
            kappa_grid: Grid { re_min: -2.0, re_max: 2.0, re_steps: 3, im_min: -2.0, im_max: 2.0, im_steps: 3 },
            exceptional_margin: 1e-6,
            tolerances: Tolerances::default(),
            seed: 0,
            parallelism: 0,
            jitter: 0.0,
            scan: ScanSettings::default(),
        }
    }
}

impl SweepConfig {
    pub fn from_path(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: SweepConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        self.m_grid.validate("m_grid")?;
        self.kappa_grid.validate("kappa_grid")?;
        if !(self.jitter >= 0.0 && self.jitter < 1.0) {
            return Err(CliError::Config(format!("jitter {} must lie in [0, 1)", self.jitter)));
        }
        let reach = 0.5 * self.jitter * self.m_grid.spacing().0;
        for re in self.m_grid.re_axis() {
            if re.abs() - reach <= 0.0 || re.abs() + reach >= 1.0 {
                return Err(CliError::Config(format!("m_grid: Re m = {re} must stay inside 0 < |Re m| < 1")));
            }
        }
        let positive = [
            ("exceptional_margin", self.exceptional_margin),
            ("tolerances.integer_tol", self.tolerances.integer_tol),
            ("tolerances.corollary_tol", self.tolerances.corollary_tol),
        ];
        for (name, value) in positive {
            if !(value > 0.0) {
                return Err(CliError::Config(format!("{name} must be positive")));
            }
        }
        if self.scan.samples == 0 || !(self.scan.log_modulus_min <= self.scan.log_modulus_max) {
            return Err(CliError::Config("scan: need samples > 0 and min <= max".into()));
        }
        Ok(())
    }

    pub fn total_points(&self) -> usize {
        self.m_grid.re_steps * self.m_grid.im_steps * self.kappa_grid.re_steps * self.kappa_grid.im_steps
    }
}

/// Parses `"re,im"` or a bare real.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("bad number {s:?}: {e}"));
    let value = match text.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(text)?, 0.0),
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(format!("{text:?} is not finite"))
    }
}
