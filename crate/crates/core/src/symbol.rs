//! The two-variable symbol `Γ_{m,κ;½,0}(x, t)` of the wave operator and its
//! restriction to the boundary of the compactified square
//! `[0, +∞] × [−∞, +∞]`.
//!
//! Edge conventions:
//!
//! | edge | set                 | native parameter | traversal      |
//! |------|---------------------|------------------|----------------|
//! | B1   | `{0} × [−∞, +∞]`    | `t`              | `−∞ → +∞`      |
//! | B2   | `[0, +∞] × {+∞}`    | `x`              | `0 → +∞`       |
//! | B3   | `{+∞} × [−∞, +∞]`   | `t`              | `+∞ → −∞`      |
//! | B4   | `[0, +∞] × {−∞}`    | `x`              | `+∞ → 0`       |
//!
//! Every edge is parametrized by a compactified `s ∈ [−1, 1]`. On B1/B3
//! `t = tan(πs/2)`. On B2/B4 the map is logarithmic,
//! `ln(x²/4) = c + R·atanh(s)`, with `c`, `R` chosen per parameter pair so that
//! the whole range of `x` over which the scattering function turns is
//! covered at uniform density. Endpoints `s = ±1` always evaluate to
//! closed-form corner values.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::special_functions::{cpow_half_square, principal_ln, xi_product, xi_product_limit, LimitSign};

/// Denominator modulus below which evaluation is refused.
pub const DENOMINATOR_GUARD: f64 = 1e-10;

/// Decades (in units of `1/|Re m|`) added past the outermost transition of
/// the scattering function when sizing the logarithmic window.
const WINDOW_TAIL: f64 = 8.0;

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
fn i_pi(z: Complex64) -> Complex64 {
    c(0.0, PI) * z
}

const HALF: Complex64 = Complex64::new(0.5, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    B1,
    B2,
    B3,
    B4,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::B1, Edge::B2, Edge::B3, Edge::B4];

    pub fn name(self) -> &'static str {
        match self {
            Edge::B1 => "B1",
            Edge::B2 => "B2",
            Edge::B3 => "B3",
            Edge::B4 => "B4",
        }
    }

    /// Compactified start and end of the traversal.
    pub fn traversal(self) -> (f64, f64) {
        match self {
            Edge::B1 | Edge::B2 => (-1.0, 1.0),
            Edge::B3 | Edge::B4 => (1.0, -1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub edge: Edge,
    /// `t` on B1/B3, `x` on B2/B4; infinite at the corners.
    pub param: f64,
    pub compactified: f64,
}

/// Window in `v = ln(x²/4)` that contains every transition of `Γ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogWindow {
    pub center: f64,
    pub half_width: f64,
}

impl LogWindow {
    fn for_params(p: &ModelParams) -> Self {
        let m = p.m();
        match p.log_varsigma() {
            // |ς e^{∓iπm} u^m| = 1 at v = −(ln|ς| ± π Im m)/Re m.
            Some(log_s) => LogWindow {
                center: -log_s.re / m.re,
                half_width: (PI * m.im.abs() + WINDOW_TAIL) / m.re.abs(),
            },
            None => LogWindow { center: 0.0, half_width: WINDOW_TAIL / m.re.abs() },
        }
    }

    pub fn log_power(&self, s: f64) -> f64 {
        self.center + self.half_width * s.atanh()
    }

    pub fn compactify(&self, log_power: f64) -> f64 {
        ((log_power - self.center) / self.half_width).tanh()
    }
}

/// Native `x` from `v = ln(x²/4)`.
fn x_from_log_power(v: f64) -> f64 {
    2.0 * (v / 2.0).exp()
}

fn log_power_from_x(x: f64) -> f64 {
    2.0 * (x / 2.0).ln()
}

/// `(1 − ς e^{iπm} u^m)/(1 − ς e^{−iπm} u^m)` as a function of `v = ln u`,
/// along with the modulus of the unfactored denominator.
///
/// When `|u^m| > 1` numerator and denominator are divided by `u^m`.
fn scattering_ratio(p: &ModelParams, v: f64) -> (Complex64, f64) {
    let m = p.m();
    let s = p.varsigma();
    let num_coef = s * i_pi(m).exp();
    let den_coef = s * (-i_pi(m)).exp();
    let z = m * v;
    if z.re > 0.0 {
        let w = (-z).exp();
        let den = w - den_coef;
        (((w - num_coef) / den), den.norm() / w.norm())
    } else {
        let u = z.exp();
        let den = 1.0 - den_coef * u;
        ((1.0 - num_coef * u) / den, den.norm())
    }
}

fn scattering_prefactor(m: Complex64) -> Complex64 {
    i_pi(HALF - m).exp()
}

/// `Γ₂(0)` and `Γ₂(+∞)`.
fn scattering_limits(p: &ModelParams) -> (Complex64, Complex64) {
    let m = p.m();
    let base = scattering_prefactor(m);
    if p.is_kappa_zero() {
        return (base, base);
    }
    let swap = (2.0 * i_pi(m)).exp();
    if m.re > 0.0 {
        (base, base * swap)
    } else {
        (base * swap, base)
    }
}

fn scattering_from_log_power(p: &ModelParams, v: f64) -> Result<Complex64> {
    let base = scattering_prefactor(p.m());
    if p.is_kappa_zero() {
        return Ok(base);
    }
    let (ratio, den) = scattering_ratio(p, v);
    if den < DENOMINATOR_GUARD {
        return Err(Error::VanishingDenominator(den));
    }
    Ok(base * ratio)
}

/// `Γ₂(x) = e^{iπ(½−m)} (1 − ςe^{iπm}(x²/4)^m)/(1 − ςe^{−iπm}(x²/4)^m)`.
pub fn scattering_value(p: &ModelParams, x: f64) -> Result<Complex64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!("x = {x} must be non-negative")));
    }
    if x == 0.0 {
        return Ok(scattering_limits(p).0);
    }
    if x.is_infinite() {
        return Ok(scattering_limits(p).1);
    }
    scattering_from_log_power(p, log_power_from_x(x))
}

/// `(prefactor, order)` pairs for the Ξ products on B1 and B3.
fn vertical_edge_factor(p: &ModelParams, edge: Edge) -> (Complex64, Complex64) {
    let m = p.m();
    let plain = (i_pi(HALF - m) / 2.0, m);
    let flipped = (i_pi(HALF + m) / 2.0, -m);
    if p.is_kappa_zero() {
        return plain;
    }
    match (edge, m.re > 0.0) {
        (Edge::B1, true) | (Edge::B3, false) => plain,
        (Edge::B1, false) | (Edge::B3, true) => flipped,
        _ => unreachable!("only B1 and B3 carry Xi products"),
    }
}

fn vertical_edge_value(p: &ModelParams, edge: Edge, t: f64) -> Result<Complex64> {
    let (phase, order) = vertical_edge_factor(p, edge);
    let prefactor = phase.exp();
    if t == f64::INFINITY {
        return Ok(prefactor * xi_product_limit(order, LimitSign::Lower));
    }
    if t == f64::NEG_INFINITY {
        return Ok(prefactor * xi_product_limit(order, LimitSign::Upper));
    }
    Ok(prefactor * xi_product(c(0.5, 0.0), order, t)?)
}

/// Interior symbol `Γ(x, t)` for finite `x ≥ 0` and finite `t`.
pub fn gamma_full(p: &ModelParams, x: f64, t: f64) -> Result<Complex64> {
    if !(x >= 0.0) || !x.is_finite() || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("gamma_full needs finite x >= 0 and t (x = {x}, t = {t})")));
    }
    let m = p.m();
    let prefactor = (c(0.0, PI / 4.0) - i_pi(m) / 2.0).exp();
    let direct = xi_product(c(0.5, 0.0), m, t)?;
    if p.is_kappa_zero() {
        return Ok(prefactor * direct);
    }
    let s = p.varsigma();
    let reflected = xi_product(c(0.5, 0.0), -m, t)?;
    let den_coef = s * (-i_pi(m)).exp();

    if x == 0.0 {
        return Ok(if m.re > 0.0 {
            prefactor * direct
        } else {
            prefactor * s * reflected / den_coef
        });
    }
    let z = m * log_power_from_x(x);
    let (num, den, den_mag) = if z.re > 0.0 {
        let w = (-z).exp();
        let den = w - den_coef;
        (direct * w - s * reflected, den, den.norm() / w.norm())
    } else {
        let u = z.exp();
        let den = 1.0 - den_coef * u;
        (direct - s * reflected * u, den, den.norm())
    };
    if den_mag < DENOMINATOR_GUARD {
        return Err(Error::VanishingDenominator(den_mag));
    }
    Ok(prefactor * num / den)
}

/// Boundary symbol evaluator bound to one parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySymbol {
    params: ModelParams,
    window: LogWindow,
}

impl BoundarySymbol {
    pub fn new(params: ModelParams) -> Self {
        BoundarySymbol { params, window: LogWindow::for_params(&params) }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn window(&self) -> LogWindow {
        self.window
    }

    /// Boundary point at compactified coordinate `s ∈ [−1, 1]`.
    pub fn point(&self, edge: Edge, s: f64) -> BoundaryPoint {
        let s = s.clamp(-1.0, 1.0);
        let param = match edge {
            Edge::B1 | Edge::B3 => {
                if s == 1.0 {
                    f64::INFINITY
                } else if s == -1.0 {
                    f64::NEG_INFINITY
                } else {
                    (PI * s / 2.0).tan()
                }
            }
            Edge::B2 | Edge::B4 => {
                if s == 1.0 {
                    f64::INFINITY
                } else if s == -1.0 {
                    0.0
                } else {
                    x_from_log_power(self.window.log_power(s))
                }
            }
        };
        BoundaryPoint { edge, param, compactified: s }
    }

    /// Boundary point at native parameter `t` (B1/B3) or `x` (B2/B4).
    pub fn point_at(&self, edge: Edge, param: f64) -> BoundaryPoint {
        let compactified = match edge {
            Edge::B1 | Edge::B3 => 2.0 * param.atan() / PI,
            Edge::B2 | Edge::B4 => {
                if param <= 0.0 {
                    -1.0
                } else if param.is_infinite() {
                    1.0
                } else {
                    self.window.compactify(log_power_from_x(param))
                }
            }
        };
        BoundaryPoint { edge, param, compactified }
    }

    /// Edge value at compactified `s`; the numerical path used by winding.
    pub fn value_at(&self, edge: Edge, s: f64) -> Result<Complex64> {
        let p = &self.params;
        match edge {
            Edge::B4 => Ok(c(1.0, 0.0)),
            Edge::B2 => {
                if s <= -1.0 {
                    Ok(scattering_limits(p).0)
                } else if s >= 1.0 {
                    Ok(scattering_limits(p).1)
                } else {
                    scattering_from_log_power(p, self.window.log_power(s))
                }
            }
            Edge::B1 | Edge::B3 => {
                let t = self.point(edge, s).param;
                vertical_edge_value(p, edge, t)
            }
        }
    }

    pub fn edge_value(&self, pt: &BoundaryPoint) -> Result<Complex64> {
        self.value_at(pt.edge, pt.compactified)
    }

    /// `Γ_j` at both ends of its native range: `(−∞, +∞)` on B1/B3 and
    /// `(0, +∞)` on B2/B4.
    pub fn corner_values(&self, edge: Edge) -> Result<(Complex64, Complex64)> {
        Ok((self.value_at(edge, -1.0)?, self.value_at(edge, 1.0)?))
    }
}

/// `Γ_j` at a boundary point.
pub fn edge_value(p: &ModelParams, pt: &BoundaryPoint) -> Result<Complex64> {
    let symbol = BoundarySymbol::new(*p);
    match pt.edge {
        Edge::B1 | Edge::B3 => vertical_edge_value(p, pt.edge, pt.param),
        Edge::B2 => scattering_value(p, pt.param),
        Edge::B4 => symbol.edge_value(pt),
    }
}

/// Residuals of the four corner-matching conditions
/// `Γ₁(+∞)=Γ₂(0)`, `Γ₂(+∞)=Γ₃(+∞)`, `Γ₃(−∞)=Γ₄(+∞)`, `Γ₄(0)=Γ₁(−∞)`.
pub fn corner_check(p: &ModelParams) -> Result<[f64; 4]> {
    let symbol = BoundarySymbol::new(*p);
    let (g1_lo, g1_hi) = symbol.corner_values(Edge::B1)?;
    let (g2_lo, g2_hi) = symbol.corner_values(Edge::B2)?;
    let (g3_lo, g3_hi) = symbol.corner_values(Edge::B3)?;
    let (g4_lo, g4_hi) = symbol.corner_values(Edge::B4)?;
    Ok([(g1_hi - g2_lo).norm(), (g2_hi - g3_hi).norm(), (g3_lo - g4_hi).norm(), (g4_lo - g1_lo).norm()])
}

/// `min_v |1 − coef·e^{m v}|` over a grid on the symbol's log window plus
/// the analytic near-minimizers.
fn min_modulus(p: &ModelParams, coef: Complex64, n_samples: usize) -> f64 {
    let m = p.m();
    let window = LogWindow::for_params(p);
    let eval = |v: f64| {
        let z = m * v;
        if z.re > 0.0 {
            let w = (-z).exp();
            (w - coef).norm() / w.norm()
        } else {
            (1.0 - coef * z.exp()).norm()
        }
    };
    let n = n_samples.max(2);
    let (lo, hi) = (window.center - window.half_width, window.center + window.half_width);
    let mut best = (0..n)
        .map(|i| eval(lo + (hi - lo) * i as f64 / (n - 1) as f64))
        .fold(f64::INFINITY, f64::min);

    // Exact zero of 1 − coef e^{mv} on the real line, if any, for each branch
    // index j of the logarithm: v = (2πij − Log coef)/m.
    let log_coef = principal_ln(coef);
    let (a, b) = (m.re, m.im);
    let norm_sqr = m.norm_sqr();
    // v real ⇔ Im((2πij − Log coef)·conj(m)) = 0; pick the nearest integers j.
    let j_star = (a * log_coef.im - b * log_coef.re) / (2.0 * PI * a);
    for j in [j_star.floor(), j_star.ceil()] {
        let v = ((c(0.0, 2.0 * PI * j) - log_coef) * m.conj()).re / norm_sqr;
        if v.is_finite() {
            best = best.min(eval(v));
        }
    }
    // Modulus-matching point |coef e^{mv}| = 1.
    let v_match = -coef.norm().ln() / a;
    if v_match.is_finite() {
        best = best.min(eval(v_match));
    }
    best
}

/// Minimum of `|1 − ς e^{−iπm}(x²/4)^m|` over `x > 0`.
pub fn min_denominator(p: &ModelParams, n_samples: usize) -> f64 {
    if p.is_kappa_zero() {
        return 1.0;
    }
    min_modulus(p, p.varsigma() * (-i_pi(p.m())).exp(), n_samples)
}

/// Minimum of `|1 − ς e^{+iπm}(x²/4)^m|`, whose zeros are zeros of `Γ₂`.
pub fn min_numerator(p: &ModelParams, n_samples: usize) -> f64 {
    if p.is_kappa_zero() {
        return 1.0;
    }
    min_modulus(p, p.varsigma() * i_pi(p.m()).exp(), n_samples)
}

/// `(x²/4)^m` with the limit conventions used by the symbol.
pub fn power_factor(p: &ModelParams, x: f64) -> Result<Complex64> {
    cpow_half_square(x, p.m())
}
