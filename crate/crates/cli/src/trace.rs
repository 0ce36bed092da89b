use std::io::Write;

use levinson_core::winding::{boundary_trace, RefinementPolicy, TraceRow};
use levinson_core::ModelParams;

use crate::error::CliResult;
use crate::report::fmt_f64;

pub const TRACE_HEADER: [&str; 6] = ["edge", "compactified_param", "native_param", "re", "im", "unwrapped_phase"];

/// Refined boundary nodes with `initial_panels` seed panels per edge.
pub fn trace_rows(p: &ModelParams, initial_panels: usize) -> CliResult<Vec<TraceRow>> {
    let policy = RefinementPolicy { initial_panels: initial_panels.max(1), ..Default::default() };
    Ok(boundary_trace(p, policy)?)
}

pub fn write_trace_csv<W: Write>(rows: &[TraceRow], out: W) -> CliResult<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(TRACE_HEADER)?;
    for row in rows {
        writer.write_record([
            row.edge.name().to_string(),
            fmt_f64(row.compactified),
            fmt_f64(row.param),
            fmt_f64(row.value.re),
            fmt_f64(row.value.im),
            fmt_f64(row.unwrapped_phase),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
