//! Small-`x` decomposition `f ≈ a·φ₋ + b·φ₊` for solutions of
//! `f'' = ((m² − ¼)/x² + shift)·f`.
//!
//! `φ±(x) = x^{½±m} Σ_j c_j x^{2j}` with `c_j = c_{j−1}·shift/(4j(j ± m))` are
//! the exact Frobenius solutions, so the fitted ratio `a/b` carries no
//! truncation error from the fit window. With `shift = 0` they reduce to the
//! pure powers `x^{½±m}`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Condition number of the (column-scaled) design matrix above which a fit
/// is refused.
pub const MAX_FIT_CONDITION: f64 = 1e8;

/// `φ±(x)`; `upper = true` selects the `x^{½+m}` solution.
pub fn frobenius_basis(m: Complex64, shift: Complex64, x: f64, upper: bool) -> Complex64 {
    let mu = if upper { m } else { -m };
    let lead = ((0.5 + mu) * x.ln()).exp();
    let x2 = x * x;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for j in 1..200 {
        let jf = j as f64;
        term *= shift * x2 / (4.0 * jf * (jf + mu));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    lead * sum
}

/// Least-squares coefficients `(a, b)` of `samples ≈ a·φ₋ + b·φ₊`.
pub fn fit_coefficients(m: Complex64, shift: Complex64, samples: &[(f64, Complex64)]) -> Result<(Complex64, Complex64)> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument("fit needs at least two samples".into()));
    }
    let cols: Vec<[Complex64; 2]> = samples
        .iter()
        .map(|&(x, _)| [frobenius_basis(m, shift, x, false), frobenius_basis(m, shift, x, true)])
        .collect();
    let scale = [0, 1].map(|j| cols.iter().map(|c| c[j].norm_sqr()).sum::<f64>().sqrt());
    if scale.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
        return Err(Error::FitConditioning(f64::INFINITY));
    }

    // Normal equations of the column-scaled system.
    let mut g = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut rhs = [Complex64::new(0.0, 0.0); 2];
    for (col, &(_, value)) in cols.iter().zip(samples) {
        let u = [col[0] / scale[0], col[1] / scale[1]];
        for i in 0..2 {
            rhs[i] += u[i].conj() * value;
            for j in 0..2 {
                g[i][j] += u[i].conj() * u[j];
            }
        }
    }
    let (g11, g22, g12) = (g[0][0].re, g[1][1].re, g[0][1]);
    let mean = 0.5 * (g11 + g22);
    let spread = (0.25 * (g11 - g22).powi(2) + g12.norm_sqr()).sqrt();
    let (hi, lo) = (mean + spread, mean - spread);
    let condition = if lo > 0.0 { (hi / lo).sqrt() } else { f64::INFINITY };
    if condition > MAX_FIT_CONDITION {
        return Err(Error::FitConditioning(condition));
    }
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let a = (g[1][1] * rhs[0] - g[0][1] * rhs[1]) / det;
    let b = (g[0][0] * rhs[1] - g[1][0] * rhs[0]) / det;
    Ok((a / scale[0], b / scale[1]))
}

/// The boundary ratio `a/b` realized by `samples`.
pub fn fit_boundary_ratio(m: Complex64, shift: Complex64, samples: &[(f64, Complex64)]) -> Result<Complex64> {
    let (a, b) = fit_coefficients(m, shift, samples)?;
    if b.norm() == 0.0 {
        return Err(Error::FitConditioning(f64::INFINITY));
    }
    Ok(a / b)
}
