//! Independent check on the closed-form spectrum: integrate the decaying
//! solution of `−f'' + (m²−¼)x^{−2} f = −k² f` inward from large `x` and read
//! off the boundary ratio `a/b` near the origin.

use num_complex::Complex64;

use super::frobenius::fit_boundary_ratio;
use super::ModelParams;
use crate::error::{Error, Result};

pub const RELATIVE_TOLERANCE: f64 = 1e-10;
const MAX_STEPS: usize = 2_000_000;
const FIT_POINTS: usize = 9;

type State = [Complex64; 2];

struct Equation {
    potential: Complex64,
    k2: Complex64,
}

impl Equation {
    fn rhs(&self, x: f64, y: &State) -> State {
        [y[1], (self.potential / (x * x) + self.k2) * y[0]]
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn dopri_step(eq: &Equation, x: f64, y: &State, h: f64) -> (State, f64) {
    let mut k = [[Complex64::new(0.0, 0.0); 2]; 7];
    k[0] = eq.rhs(x, y);
    for s in 1..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            for comp in 0..2 {
                ys[comp] += h * A[s][j] * kj[comp];
            }
        }
        k[s] = eq.rhs(x + C[s] * h, &ys);
    }
    let mut y5 = *y;
    let mut err = 0.0f64;
    for comp in 0..2 {
        let mut hi = Complex64::new(0.0, 0.0);
        let mut lo = Complex64::new(0.0, 0.0);
        for s in 0..7 {
            hi += B5[s] * k[s][comp];
            lo += B4[s] * k[s][comp];
        }
        y5[comp] += h * hi;
        let scale = y[comp].norm().max(y5[comp].norm()).max(1e-300);
        err = err.max((h * (hi - lo)).norm() / (RELATIVE_TOLERANCE * scale));
    }
    (y5, err)
}

/// Integrates from `x0` to `x1` (either direction), landing exactly on `x1`.
fn integrate(eq: &Equation, x0: f64, x1: f64, y: State, h_guess: f64) -> Result<(State, f64)> {
    let direction = (x1 - x0).signum();
    let mut x = x0;
    let mut y = y;
    let mut h = h_guess.abs().min((x1 - x0).abs()) * direction;
    for _ in 0..MAX_STEPS {
        if (x1 - x) * direction <= 0.0 {
            return Ok((y, h.abs()));
        }
        let last = (x + h - x1) * direction >= 0.0;
        let step = if last { x1 - x } else { h };
        let (next, err) = dopri_step(eq, x, &y, step);
        if !(err.is_finite()) {
            return Err(Error::Integration(format!("non-finite error estimate at x = {x}")));
        }
        if err <= 1.0 {
            x = if last { x1 } else { x + step };
            y = next;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = step * factor;
        if h.abs() < 1e-14 * x.abs().max(1e-300) {
            return Err(Error::Integration(format!("step size underflow at x = {x}")));
        }
    }
    Err(Error::Integration("step budget exhausted".into()))
}

/// `a/b − κ` for the solution that decays like `e^{−kx}`.
///
/// Integration starts at `x_far` from the large-`x` expansion of
/// `√x K_m(kx)` and runs down to `x_near`; the coefficients are fitted on
/// `[x_near, 10·x_near]` against the exact Frobenius pair, so a value near
/// zero certifies `k` as an eigenvalue parameter.
pub fn shooting_residual(p: &ModelParams, k: Complex64, x_far: f64, x_near: f64) -> Result<Complex64> {
    if !(k.re > 0.0) {
        return Err(Error::InvalidArgument(format!("Re k must be positive, got {k}")));
    }
    if !(x_near > 0.0) || !(x_far > 10.0 * x_near) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < 10 x_near < x_far (x_near = {x_near}, x_far = {x_far})"
        )));
    }
    let m = p.m();
    let eq = Equation { potential: m * m - 0.25, k2: k * k };

    // e^{-kx} Σ_j c_j (kx)^{-j}, normalized so e^{-k x_far} = 1.
    let mu4 = 4.0 * m * m;
    let z = k * x_far;
    let mut term = Complex64::new(1.0, 0.0);
    let mut g = term;
    let mut dg = Complex64::new(0.0, 0.0);
    for j in 1..6 {
        let jf = j as f64;
        term *= (mu4 - (2.0 * jf - 1.0).powi(2)) / (8.0 * jf * z);
        g += term;
        dg += -jf * term / x_far;
        if term.norm() < 1e-17 {
            break;
        }
    }
    let start = [g, -k * g + dg];

    let window: Vec<f64> = (0..FIT_POINTS)
        .rev()
        .map(|i| x_near * 10f64.powf(i as f64 / (FIT_POINTS - 1) as f64))
        .collect();
    let mut samples = Vec::with_capacity(FIT_POINTS);
    let (mut y, mut h) = integrate(&eq, x_far, window[0], start, 0.1 / k.norm())?;
    samples.push((window[0], y[0]));
    for pair in window.windows(2) {
        let (next, h_next) = integrate(&eq, pair[0], pair[1], y, h)?;
        y = next;
        h = h_next;
        samples.push((pair[1], y[0]));
    }
    let ratio = fit_boundary_ratio(m, k * k, &samples)?;
    Ok(ratio - p.kappa())
}

/// `shooting_residual` with `x_far = 40/Re k` and `x_near = 0.1/|k|`.
pub fn shooting_residual_default(p: &ModelParams, k: Complex64) -> Result<Complex64> {
    if !(k.re > 0.0) {
        return Err(Error::InvalidArgument(format!("Re k must be positive, got {k}")));
    }
    let x_near = 0.1 / k.norm();
    let x_far = (40.0 / k.re).max(20.0 * x_near);
    shooting_residual(p, k, x_far, x_near)
}
