use std::fmt::Write as _;

use levinson_core::{Complex64, SpectrumReport, VerificationRecord};
use serde::Serialize;

/// Version of every JSON document the CLI emits.
pub const SCHEMA_VERSION: u32 = 1;

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: &'a T,
}

pub fn to_json<T: Serialize>(body: &T) -> serde_json::Result<String> {
    serde_json::to_string_pretty(&Envelope { schema: SCHEMA_VERSION, body })
}

fn fmt_complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{:.10} - {:.10}i", z.re, -z.im)
    } else {
        format!("{:.10} + {:.10}i", z.re, z.im)
    }
}

pub fn render_record(record: &VerificationRecord) -> String {
    let w = &record.winding;
    let mut out = String::new();
    let _ = writeln!(out, "m                 {}", fmt_complex(record.params.m()));
    let _ = writeln!(out, "kappa             {}", fmt_complex(record.params.kappa()));
    let _ = writeln!(out, "varsigma          {}", fmt_complex(record.params.varsigma()));
    let _ = writeln!(out, "eigenvalues       {}", record.spectrum_count);
    let _ = writeln!(out, "winding           {} ({:.12})", w.rounded, w.total);
    let _ = writeln!(out, "edges w1..w4      {:.9} {:.9} {:.9} {:.9}", w.w[0], w.w[1], w.w[2], w.w[3]);
    let _ = writeln!(out, "integrality       {:.3e}", w.integrality_residual);
    let _ = writeln!(out, "samples           {:?}", w.samples_used);
    let _ = writeln!(out, "w2 + |Re m|       {:.12}", record.corollary_lhs);
    if let Some(r) = record.corollary_residual {
        let _ = writeln!(out, "corollary resid   {r:.3e}");
    }
    if let Some((e1, e3)) = record.edge_reference_residuals {
        let _ = writeln!(out, "edge resid        {e1:.3e} {e3:.3e}");
    }
    let _ = writeln!(out, "theorem           {}", if record.theorem_ok { "holds" } else { "MISMATCH" });
    out
}

pub fn render_spectrum(report: &SpectrumReport, residuals: Option<&[Option<f64>]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "count {}  margin {:.3e}", report.count, report.margin);
    let _ = write!(out, "{:>6}  {:>24}  {:>24}  {:>24}  {:>24}  {:>10}", "n", "Re k", "Im k", "Re E", "Im E", "margin");
    if residuals.is_some() {
        let _ = write!(out, "  {:>10}", "residual");
    }
    out.push('\n');
    for (i, mode) in report.modes.iter().enumerate() {
        let _ = write!(
            out,
            "{:>6}  {:>24.16e}  {:>24.16e}  {:>24.16e}  {:>24.16e}  {:>10.3e}",
            mode.n, mode.k.re, mode.k.im, mode.energy.re, mode.energy.im, mode.strip_margin
        );
        if let Some(res) = residuals {
            match res[i] {
                Some(r) => {
                    let _ = write!(out, "  {r:>10.3e}");
                }
                None => out.push_str("        n/a"),
            }
        }
        out.push('\n');
    }
    out
}
