//! Library side of the `levinson` command: sweep configuration, guarded
//! verification, and CSV/JSON rendering.

// `!(x > 0.0)` guards deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod report;
pub mod scan;
pub mod sweep;
pub mod trace;

pub use config::{parse_complex, Grid, ScanSettings, SweepConfig, Tolerances};
pub use error::{CliError, CliResult};
pub use sweep::{guarded_params, run_sweep, write_sweep_csv, Status, SweepRow, SweepSummary};

/// Margin used by single-point commands when refusing exceptional pairs.
pub const DEFAULT_MARGIN: f64 = 1e-6;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const REFUSED_OR_USAGE: i32 = 1;
    pub const MISMATCH: i32 = 2;
}
