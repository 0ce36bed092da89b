use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bessel::hat_j;
use crate::error::{Error, Result};
use crate::model::frobenius::fit_boundary_ratio;
use crate::model::ModelParams;
use crate::special_functions::cpow_half_square;
use crate::symbol::DENOMINATOR_GUARD;

/// `Minus` is the incoming kernel `F⁻`, `Plus` the outgoing `F⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelSign {
    Minus,
    Plus,
}

impl KernelSign {
    pub fn value(self) -> f64 {
        match self {
            KernelSign::Minus => -1.0,
            KernelSign::Plus => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSample {
    pub x: f64,
    pub y: f64,
    pub sign: KernelSign,
    pub value: Complex64,
}

impl KernelSample {
    pub fn evaluate(p: &ModelParams, sign: KernelSign, x: f64, y: f64) -> Result<Self> {
        Ok(KernelSample { x, y, sign, value: kernel(p, sign, x, y)? })
    }
}

/// `F∓(x,y) = e^{∓iπm/2}√(2/π)·(Ĵ_m(xy) − ςĴ_{−m}(xy)(y²/4)^m) / (1 − ςe^{∓iπm}(y²/4)^m)`.
///
/// Requires `xy ≤ 60`.
pub fn kernel(p: &ModelParams, sign: KernelSign, x: f64, y: f64) -> Result<Complex64> {
    if !(x > 0.0) || !(y > 0.0) {
        return Err(Error::InvalidArgument(format!("kernel needs x, y > 0 (x = {x}, y = {y})")));
    }
    let m = p.m();
    let z = x * y;
    let rotation = Complex64::new(0.0, sign.value() * PI) * m;
    let prefactor = (rotation / 2.0).exp() * (2.0 / PI).sqrt();
    let direct = hat_j(m, z)?;
    if p.is_kappa_zero() {
        return Ok(prefactor * direct);
    }
    let reflected = hat_j(-m, z)?;
    let w = p.varsigma() * cpow_half_square(y, m)?;
    let phase = rotation.exp();
    let (ratio, den) = if w.norm() > 1.0 {
        let den = 1.0 / w - phase;
        ((direct / w - reflected) / den, den.norm() * w.norm())
    } else {
        let den = 1.0 - w * phase;
        ((direct - reflected * w) / den, den.norm())
    };
    if den < DENOMINATOR_GUARD {
        return Err(Error::VanishingDenominator(den));
    }
    Ok(prefactor * ratio)
}

/// `|(−D²_h + (m²−¼)/x²) F(·,y)(x) − y² F(x,y)|` with the five-point
/// second difference.
pub fn kernel_ode_residual(p: &ModelParams, sign: KernelSign, x: f64, y: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || !(x > 2.0 * h) {
        return Err(Error::InvalidArgument(format!("need x > 2h > 0 (x = {x}, h = {h})")));
    }
    let f = |offset: f64| kernel(p, sign, x + offset * h, y);
    let center = f(0.0)?;
    let second = (-f(2.0)? + 16.0 * f(1.0)? - 30.0 * center + 16.0 * f(-1.0)? - f(-2.0)?) / (12.0 * h * h);
    let m = p.m();
    Ok((-second + (m * m - 0.25) / (x * x) * center - y * y * center).norm())
}

/// Fitted `a/b` of `F(x,y) ≈ a·φ₋(x) + b·φ₊(x)` on `n` log-spaced points
/// of `[x_lo, x_hi]`, where `φ±` are the exact small-`x` solutions
/// (leading behaviour `x^{½±m}`). Equals `κ` for any `y`.
pub fn kernel_boundary_ratio(
    p: &ModelParams,
    sign: KernelSign,
    y: f64,
    x_lo: f64,
    x_hi: f64,
    n: usize,
) -> Result<Complex64> {
    if !(x_lo > 0.0) || !(x_hi > x_lo) || n < 2 {
        return Err(Error::InvalidArgument(format!("bad fit window [{x_lo}, {x_hi}] with {n} points")));
    }
    let samples = (0..n)
        .map(|i| {
            let x = x_lo * (x_hi / x_lo).powf(i as f64 / (n - 1) as f64);
            Ok((x, kernel(p, sign, x, y)?))
        })
        .collect::<Result<Vec<_>>>()?;
    fit_boundary_ratio(p.m(), Complex64::new(-y * y, 0.0), &samples)
}
