//! Gauss–Legendre rules.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes per composite panel.
pub const PANEL_NODES: usize = 16;

/// Nodes and weights of the `n`-point rule on `[−1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P_n'(x).
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_NODES))
}

/// Composite rule on `[a, b]` with `total` nodes split into equal
/// 16-point panels. `total` must be a positive multiple of 16.
pub fn composite(a: f64, b: f64, total: usize) -> Result<Vec<(f64, f64)>> {
    if total == 0 || !total.is_multiple_of(PANEL_NODES) {
        return Err(Error::InvalidArgument(format!(
            "quadrature order {total} must be a positive multiple of {PANEL_NODES}"
        )));
    }
    let (nodes, weights) = panel_rule();
    let panels = total / PANEL_NODES;
    let width = (b - a) / panels as f64;
    Ok((0..panels)
        .flat_map(|j| {
            let mid = a + (j as f64 + 0.5) * width;
            nodes.iter().zip(weights).map(move |(&t, &w)| (mid + 0.5 * width * t, 0.5 * width * w))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16] {
            let (x, w) = gauss_legendre(n);
            for degree in 0..2 * n {
                let exact = if degree % 2 == 1 { 0.0 } else { 2.0 / (degree as f64 + 1.0) };
                let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(degree as i32)).sum();
                assert!((approx - exact).abs() < 1e-13, "n = {n}, degree = {degree}");
            }
        }
    }

    #[test]
    fn composite_rule() {
        let rule = composite(0.0, PI, 64).unwrap();
        let integral: f64 = rule.iter().map(|(x, w)| w * x.sin()).sum();
        assert!((integral - 2.0).abs() < 1e-14);
        assert!(rule.windows(2).all(|p| p[0].0 < p[1].0));
        assert!(composite(0.0, 1.0, 40).is_err());
    }
}
