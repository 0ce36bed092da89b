use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bessel::WINDOW;
use super::kernel::{kernel, KernelSign};
use super::quadrature::composite;
use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Peak-relative level below which the bump counts as vanished.
pub const BUMP_CUTOFF: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianBump {
    pub center: f64,
    pub width: f64,
}

impl GaussianBump {
    pub const STANDARD: GaussianBump = GaussianBump { center: 3.0, width: 0.5 };

    pub fn eval(&self, x: f64) -> f64 {
        let t = (x - self.center) / self.width;
        (-0.5 * t * t).exp()
    }

    /// Interval outside which the bump is below [`BUMP_CUTOFF`].
    pub fn support(&self) -> (f64, f64) {
        let reach = self.width * (-2.0 * BUMP_CUTOFF.ln()).sqrt();
        (self.center - reach, self.center + reach)
    }
}

/// `‖g − f‖₂` on `[0, X]`, where
/// `g(x) = ∫₀^Y F⁺(y,x) ∫₀^X F⁻(y,u) f(u) du dy`.
///
/// The outer kernel enters transposed. Both integrals use composite
/// Gauss–Legendre rules with `quad_order` nodes; `g` is evaluated on the
/// inner nodes, which also carry the norm. Truncation in `Y` dominates the
/// result, so only loose agreement is expected.
pub fn roundtrip_residual(p: &ModelParams, f: &GaussianBump, x_max: f64, y_max: f64, quad_order: usize) -> Result<f64> {
    if !(x_max > 0.0) || !(y_max > 0.0) {
        return Err(Error::InvalidArgument(format!("truncations must be positive (X = {x_max}, Y = {y_max})")));
    }
    if x_max * y_max > WINDOW {
        return Err(Error::OutOfWindow(x_max * y_max));
    }
    let (lo, hi) = f.support();
    if !(f.width > 0.0) || lo <= 0.0 || hi >= x_max / 2.0 {
        return Err(Error::InvalidArgument(format!(
            "bump support ({lo:.3}, {hi:.3}) must lie inside (0, {})",
            x_max / 2.0
        )));
    }
    let u_rule = composite(0.0, x_max, quad_order)?;
    let y_rule = composite(0.0, y_max, quad_order)?;
    let samples: Vec<f64> = u_rule.iter().map(|&(u, _)| f.eval(u)).collect();

    let mut transformed = Vec::with_capacity(y_rule.len());
    for &(y, _) in &y_rule {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(u, w), &fu) in u_rule.iter().zip(&samples) {
            acc += w * fu * kernel(p, KernelSign::Minus, y, u)?;
        }
        transformed.push(acc);
    }

    let mut norm2 = 0.0;
    for (&(x, wx), &fx) in u_rule.iter().zip(&samples) {
        let mut g = Complex64::new(0.0, 0.0);
        for (&(y, wy), &h) in y_rule.iter().zip(&transformed) {
            g += wy * kernel(p, KernelSign::Plus, y, x)? * h;
        }
        norm2 += wx * (g - fx).norm_sqr();
    }
    Ok(norm2.sqrt())
}
