//! Winding number of the boundary symbol and the theorem/corollary checks.
//!
//! Each edge is unwrapped by summing `Arg(f(s_{j+1})/f(s_j))` over a
//! partition refined by bisection until every step is below `max_step` in
//! magnitude. Edge windings are reported with the clockwise sign
//! convention: `w_j = −(Δ arg)/2π`, which makes the Robin pair
//! `(m, κ) = (½, −½)` wind `+1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{count_eigenvalues_with_tol, is_exceptional, ModelParams, DEFAULT_EXCEPTIONAL_TOL};
use crate::symbol::{min_denominator, min_numerator, BoundarySymbol, Edge};

pub const DEFAULT_INITIAL_PANELS: usize = 64;
pub const DEFAULT_MAX_DEPTH: u32 = 24;
pub const INTEGER_TOLERANCE: f64 = 1e-6;
/// Upper bound on panels seeded on the scattering edge.
const MAX_SEED_PANELS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementPolicy {
    pub initial_panels: usize,
    pub max_depth: u32,
    /// Largest accepted `|Arg(f_{j+1}/f_j)|`, radians.
    pub max_step: f64,
}

impl Default for RefinementPolicy {
    fn default() -> Self {
        RefinementPolicy { initial_panels: DEFAULT_INITIAL_PANELS, max_depth: DEFAULT_MAX_DEPTH, max_step: PI / 2.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeDiagnostics {
    pub samples: usize,
    pub max_phase_step: f64,
    pub max_depth_reached: u32,
}

/// Refined partition of one path with the accepted phase steps.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePath {
    /// `(s, f(s))` in traversal order.
    pub nodes: Vec<(f64, Complex64)>,
    /// Counter-clockwise winding `Σ Arg(f_{j+1}/f_j) / 2π`.
    pub winding: f64,
    pub diagnostics: EdgeDiagnostics,
}

struct Refiner<'a, F> {
    f: &'a F,
    policy: RefinementPolicy,
    nodes: Vec<(f64, Complex64)>,
    phase: f64,
    max_step: f64,
    max_depth: u32,
}

impl<F: Fn(f64) -> Result<Complex64>> Refiner<'_, F> {
    /// Appends the refined partition of `(s0, s1]` to `nodes`.
    fn panel(&mut self, s0: f64, f0: Complex64, s1: f64, f1: Complex64, depth: u32) -> Result<()> {
        let step = (f1 / f0).arg();
        if step.abs() < self.policy.max_step && step.is_finite() {
            self.phase += step;
            self.max_step = self.max_step.max(step.abs());
            self.max_depth = self.max_depth.max(depth);
            self.nodes.push((s1, f1));
            return Ok(());
        }
        if depth >= self.policy.max_depth {
            return Err(Error::RefinementExhausted { depth, at: 0.5 * (s0 + s1) });
        }
        let sm = 0.5 * (s0 + s1);
        let fm = (self.f)(sm)?;
        if fm.norm() == 0.0 || !fm.norm().is_finite() {
            return Err(Error::RefinementExhausted { depth, at: sm });
        }
        self.panel(s0, f0, sm, fm, depth + 1)?;
        self.panel(sm, fm, s1, f1, depth + 1)
    }
}

/// Refines and unwraps `f` along `s0 → s1`.
pub fn edge_path<F>(f: &F, s0: f64, s1: f64, policy: RefinementPolicy) -> Result<EdgePath>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let panels = policy.initial_panels.max(1);
    let f_start = f(s0)?;
    let mut refiner = Refiner {
        f,
        policy,
        nodes: vec![(s0, f_start)],
        phase: 0.0,
        max_step: 0.0,
        max_depth: 0,
    };
    let mut prev = (s0, f_start);
    for i in 1..=panels {
        let s = if i == panels { s1 } else { s0 + (s1 - s0) * i as f64 / panels as f64 };
        let value = f(s)?;
        refiner.panel(prev.0, prev.1, s, value, 0)?;
        prev = (s, value);
    }
    let diagnostics = EdgeDiagnostics {
        samples: refiner.nodes.len(),
        max_phase_step: refiner.max_step,
        max_depth_reached: refiner.max_depth,
    };
    Ok(EdgePath { winding: refiner.phase / (2.0 * PI), nodes: refiner.nodes, diagnostics })
}

/// Counter-clockwise winding of `f` along `s0 → s1` with diagnostics.
pub fn edge_winding<F>(f: F, s0: f64, s1: f64, policy: RefinementPolicy) -> Result<(f64, EdgeDiagnostics)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let path = edge_path(&f, s0, s1, policy)?;
    Ok((path.winding, path.diagnostics))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingReport {
    /// Clockwise per-edge windings in traversal order B1, B2, B3, B4.
    pub w: [f64; 4],
    pub total: f64,
    pub rounded: i64,
    pub integrality_residual: f64,
    pub max_phase_step: f64,
    pub samples_used: [usize; 4],
}

/// Seed panels for one edge. The scattering edge gets enough panels that a
/// phase rotating at rate `|m|` per unit of `ln(x²/4)` moves less than `π/4`
/// per panel inside the log window.
fn seed_panels(symbol: &BoundarySymbol, edge: Edge, policy: &RefinementPolicy) -> usize {
    match edge {
        Edge::B2 if !symbol.params().is_kappa_zero() => {
            let needed = 8.0 * symbol.params().m().norm() * symbol.window().half_width / PI;
            policy.initial_panels.max((needed.ceil() as usize).min(MAX_SEED_PANELS))
        }
        _ => policy.initial_panels,
    }
}

/// Refined path of every edge, in traversal order.
pub fn boundary_paths(p: &ModelParams, policy: RefinementPolicy) -> Result<[(Edge, EdgePath); 4]> {
    let symbol = BoundarySymbol::new(*p);
    let trace = |edge: Edge| -> Result<(Edge, EdgePath)> {
        let (s0, s1) = edge.traversal();
        let edge_policy = RefinementPolicy { initial_panels: seed_panels(&symbol, edge, &policy), ..policy };
        let path = edge_path(&|s| symbol.value_at(edge, s), s0, s1, edge_policy)?;
        Ok((edge, path))
    };
    Ok([trace(Edge::B1)?, trace(Edge::B2)?, trace(Edge::B3)?, trace(Edge::B4)?])
}

pub fn total_winding_with(p: &ModelParams, policy: RefinementPolicy) -> Result<WindingReport> {
    let paths = boundary_paths(p, policy)?;
    let w = [0, 1, 2, 3].map(|i| -paths[i].1.winding);
    let total: f64 = w.iter().sum();
    let rounded = total.round();
    let integrality_residual = (total - rounded).abs();
    if integrality_residual >= INTEGER_TOLERANCE {
        return Err(Error::NonIntegral { total, residual: integrality_residual });
    }
    Ok(WindingReport {
        w,
        total,
        rounded: rounded as i64,
        integrality_residual,
        max_phase_step: paths.iter().map(|(_, path)| path.diagnostics.max_phase_step).fold(0.0, f64::max),
        samples_used: [0, 1, 2, 3].map(|i| paths[i].1.diagnostics.samples),
    })
}

/// Winding of the boundary symbol around the square, clockwise.
pub fn total_winding(p: &ModelParams) -> Result<WindingReport> {
    total_winding_with(p, RefinementPolicy::default())
}

/// Closed-form contributions of B1 and B3.
pub fn edge_references(p: &ModelParams) -> (f64, f64) {
    let half = p.m().re.abs() / 2.0;
    (half - 0.25, half + 0.25)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Tolerance on the integer-ness of the exceptional witness.
    pub exceptional_tol: f64,
    /// Minimum accepted `|1 − ς e^{∓iπm}(x²/4)^m|` over `x > 0`.
    pub symbol_guard: f64,
    pub policy: RefinementPolicy,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { exceptional_tol: DEFAULT_EXCEPTIONAL_TOL, symbol_guard: 1e-8, policy: RefinementPolicy::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub params: ModelParams,
    pub winding: WindingReport,
    pub spectrum_count: usize,
    pub theorem_ok: bool,
    /// `w2 + |Re m|`.
    pub corollary_lhs: f64,
    /// `|w2 + |Re m| − count|`; `None` when `κ = 0`.
    pub corollary_residual: Option<f64>,
    /// `(|w1 − ref1|, |w3 − ref3|)`; `None` when `κ = 0`.
    pub edge_reference_residuals: Option<(f64, f64)>,
}

/// Samples used by the symbol guard when scanning for near-zeros.
pub const GUARD_SAMPLES: usize = 4096;

pub fn verify_levinson_with(p: &ModelParams, options: &VerifyOptions) -> Result<VerificationRecord> {
    let check = is_exceptional(p, options.exceptional_tol);
    if let (true, Some(witness)) = (check.exceptional, check.witness) {
        return Err(Error::Exceptional { witness, distance: check.distance });
    }
    let guard = min_denominator(p, GUARD_SAMPLES).min(min_numerator(p, GUARD_SAMPLES));
    if guard < options.symbol_guard {
        return Err(Error::VanishingDenominator(guard));
    }
    let count = count_eigenvalues_with_tol(p, options.exceptional_tol)?;
    let winding = total_winding_with(p, options.policy)?;
    let corollary_lhs = winding.w[1] + p.m().re.abs();
    let (corollary_residual, edge_reference_residuals) = if p.is_kappa_zero() {
        (None, None)
    } else {
        let (ref1, ref3) = edge_references(p);
        (
            Some((corollary_lhs - count as f64).abs()),
            Some(((winding.w[0] - ref1).abs(), (winding.w[2] - ref3).abs())),
        )
    };
    log::debug!("verify m={} kappa={} count={} winding={:.9}", p.m(), p.kappa(), count, winding.total);
    Ok(VerificationRecord {
        params: *p,
        winding,
        spectrum_count: count,
        theorem_ok: winding.rounded == count as i64,
        corollary_lhs,
        corollary_residual,
        edge_reference_residuals,
    })
}

/// Compares the rounded winding with the eigenvalue count.
pub fn verify_levinson(p: &ModelParams) -> Result<VerificationRecord> {
    verify_levinson_with(p, &VerifyOptions::default())
}

/// One sample of the boundary phase for plotting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub edge: Edge,
    pub compactified: f64,
    pub param: f64,
    pub value: Complex64,
    /// Clockwise phase accumulated since the start of B1.
    pub unwrapped_phase: f64,
}

/// Every node of the refined boundary partition with its cumulative phase.
///
/// The last row's phase is `2π` times the total winding.
pub fn boundary_trace(p: &ModelParams, policy: RefinementPolicy) -> Result<Vec<TraceRow>> {
    let symbol = BoundarySymbol::new(*p);
    let paths = boundary_paths(p, policy)?;
    let mut rows = Vec::new();
    let mut phase = 0.0;
    let mut previous: Option<Complex64> = None;
    for (edge, path) in paths {
        for (s, value) in path.nodes {
            if let Some(prev) = previous {
                phase -= (value / prev).arg();
            }
            previous = Some(value);
            rows.push(TraceRow { edge, compactified: s, param: symbol.point(edge, s).param, value, unwrapped_phase: phase });
        }
    }
    Ok(rows)
}
