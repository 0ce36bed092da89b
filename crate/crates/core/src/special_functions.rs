//! Complex log-Gamma, the dilation symbol `Ξ_m`, and principal-branch powers.
//!
//! Every ratio of Gamma functions is formed as the exponential of a
//! log-Gamma difference: `|Γ(z)|` underflows long before the ratios used by
//! the boundary symbol leave `O(1)`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Distance to a non-positive integer below which `log_gamma` reports a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Past this `|t|` the Ξ products switch to the large-argument expansion of a
/// Gamma ratio; the Lanczos differences lose digits to cancellation there.
const RATIO_ASYMPTOTIC_THRESHOLD: f64 = 5.0e4;

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Principal logarithm with `Arg ∈ (−π, π]`.
///
/// A negative zero imaginary part is folded to `+0` so the negative real axis
/// maps to `+iπ` rather than `−iπ`.
#[inline]
pub fn principal_ln(z: Complex64) -> Complex64 {
    c(z.re, z.im + 0.0).ln()
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut w = theta.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}

fn near_pole(z: Complex64) -> bool {
    if z.re > 0.5 {
        return false;
    }
    let n = z.re.round();
    n <= 0.0 && (z - c(n, 0.0)).norm() < POLE_TOLERANCE
}

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = c(LANCZOS_COEFFS[0], 0.0);
    for (i, &coef) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += coef / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// Log-Gamma on the branch obtained by analytic continuation from the
/// positive real axis (cut along the negative real axis).
///
/// `exp(log_gamma(z)) = Γ(z)` and `log_gamma(z + 1) = log_gamma(z) + Log z`
/// off the cut. Arguments with `Re z < 0.5` are lifted by the recurrence,
/// which keeps the branch consistent without the `2πi` bookkeeping of the
/// reflection formula.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite argument {z}")));
    }
    if near_pole(z) {
        return Err(Error::GammaPole(z));
    }
    if z.im < 0.0 {
        return Ok(log_gamma_upper(z.conj()).conj());
    }
    Ok(log_gamma_upper(z))
}

fn log_gamma_upper(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        return lanczos_ln_gamma(z);
    }
    let shift = (0.5 - z.re).ceil() as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        acc += principal_ln(z + k as f64);
    }
    lanczos_ln_gamma(z + shift as f64) - acc
}

/// `ln Γ(w + alpha) − ln Γ(w + beta)` up to a multiple of `2πi`.
fn ln_gamma_ratio(w: Complex64, alpha: Complex64, beta: Complex64) -> Result<Complex64> {
    if w.norm() < RATIO_ASYMPTOTIC_THRESHOLD {
        return Ok(log_gamma(w + alpha)? - log_gamma(w + beta)?);
    }
    // Tricomi–Erdélyi expansion through w^-3.
    let b2 = |x: Complex64| x * x - x + 1.0 / 6.0;
    let b3 = |x: Complex64| x * x * x - 1.5 * x * x + 0.5 * x;
    let b4 = |x: Complex64| {
        let x2 = x * x;
        x2 * x2 - 2.0 * x2 * x + x2 - 1.0 / 30.0
    };
    let inv = w.inv();
    Ok((alpha - beta) * principal_ln(w) + (b2(alpha) - b2(beta)) * inv / 2.0
        - (b3(alpha) - b3(beta)) * inv * inv / 6.0
        + (b4(alpha) - b4(beta)) * inv * inv * inv / 12.0)
}

/// `Ξ_m(t) = e^{i ln(2) t} Γ((m+1+it)/2) / Γ((m+1−it)/2)`.
pub fn xi(m: Complex64, t: f64) -> Result<Complex64> {
    let plus = (m + 1.0 + c(0.0, t)) / 2.0;
    let minus = (m + 1.0 - c(0.0, t)) / 2.0;
    let exponent = c(0.0, LN_2 * t) + log_gamma(plus)? - log_gamma(minus)?;
    Ok(exponent.exp())
}

/// `Ξ_{m1}(t) Ξ_{m2}(−t)`, with the `e^{± i ln(2) t}` factors cancelled
/// analytically so that large `|t|` stays accurate.
pub fn xi_product(m1: Complex64, m2: Complex64, t: f64) -> Result<Complex64> {
    let alpha = (m1 + 1.0) / 2.0;
    let beta = (m2 + 1.0) / 2.0;
    let up = c(0.0, t / 2.0);
    let exponent = ln_gamma_ratio(up, alpha, beta)? + ln_gamma_ratio(-up, beta, alpha)?;
    Ok(exponent.exp())
}

/// Which of the two product limits is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum LimitSign {
    /// `Ξ_{1/2}(−∞) Ξ_{m'}(+∞)`.
    Upper,
    /// `Ξ_{1/2}(+∞) Ξ_{m'}(−∞)`.
    Lower,
}

impl LimitSign {
    pub fn value(self) -> f64 {
        match self {
            LimitSign::Upper => 1.0,
            LimitSign::Lower => -1.0,
        }
    }
}

/// Closed-form corner value `Ξ_{1/2}(∓∞) Ξ_{m'}(±∞) = e^{∓iπ(1/2 − m')/2}`.
pub fn xi_product_limit(mp: Complex64, sign: LimitSign) -> Complex64 {
    (c(0.0, -sign.value() * PI / 2.0) * (0.5 - mp)).exp()
}

/// `(x²/4)^m` on the principal branch, evaluated as `exp(2m ln(x/2))`.
pub fn cpow_half_square(x: f64, m: Complex64) -> Result<Complex64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("x = {x} must be finite and non-negative")));
    }
    if x == 0.0 {
        return if m.re > 0.0 { Ok(c(0.0, 0.0)) } else { Err(Error::DivergentPower) };
    }
    let value = (m * (2.0 * (x / 2.0).ln())).exp();
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidArgument(format!("(x^2/4)^m overflows at x = {x}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn log_gamma_elementary_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
    }

    // Values computed with mpmath.loggamma at 30 digits.
    #[test]
    fn log_gamma_matches_reference_table() {
        let table = [
            ((0.3, 0.4), (0.49665590338172577, -0.9827434476071467)),
            ((2.5, -7.0), (-6.159823261541296, -9.486522412573896)),
            ((-3.7, 0.2), (-1.6364330925624564, -12.663282679635772)),
            ((-0.5, 30.0), (-49.606287521906715, 70.44984897829696)),
            ((10.0, 45.0), (-33.53414779762268, 140.22780472096062)),
            ((0.01, -0.01), (4.252825229690083, 0.7910066279294383)),
            ((0.001, 1000.0), (-1573.324358145821, 5906.97136878123)),
            ((-4.5, -0.5), (-3.7081623865245863, 14.901593916648986)),
        ];
        for ((zr, zi), (wr, wi)) in table {
            let got = log_gamma(c(zr, zi)).unwrap();
            assert!(close(got, c(wr, wi), 1e-12), "z = {zr}+{zi}i: {got} vs {wr}+{wi}i");
        }
    }

    #[test]
    fn log_gamma_recurrence_at_sample_point() {
        let z = c(0.3, 0.4);
        let lhs = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap();
        assert!((lhs - principal_ln(z)).norm() < 1e-12);
    }

    #[test]
    fn log_gamma_rejects_poles() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::GammaPole(_))));
            assert!(matches!(log_gamma(c(n + 5e-13, 0.0)), Err(Error::GammaPole(_))));
        }
        assert!(log_gamma(c(-1.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn gamma_of_minus_half() {
        let g = log_gamma(c(-0.5, 0.0)).unwrap().exp();
        assert!(close(g, c(-2.0 * PI.sqrt(), 0.0), 1e-13));
    }

    #[test]
    fn xi_at_zero_is_one() {
        for m in [c(0.5, 0.0), c(-0.3, 1.2), c(0.9, -2.0)] {
            assert!((xi(m, 0.0).unwrap() - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn xi_unimodular_for_real_order() {
        for t in [-1e3, -7.5, -0.1, 0.3, 12.0, 400.0] {
            assert!((xi(c(0.5, 0.0), t).unwrap().norm() - 1.0).abs() < 1e-12);
            assert!((xi(c(-0.7, 0.0), t).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn xi_product_agrees_with_separate_factors() {
        for t in [-30.0, -1.0, 0.5, 17.0] {
            let m = c(0.3, 0.6);
            let separate = xi(c(0.5, 0.0), t).unwrap() * xi(m, -t).unwrap();
            assert!((xi_product(c(0.5, 0.0), m, t).unwrap() - separate).norm() < 1e-11);
        }
    }

    #[test]
    fn xi_product_asymptotic_branch_is_continuous() {
        let m = c(-0.4, 1.5);
        let below = xi_product(c(0.5, 0.0), m, 2.0 * RATIO_ASYMPTOTIC_THRESHOLD * 0.999_999).unwrap();
        let above = xi_product(c(0.5, 0.0), m, 2.0 * RATIO_ASYMPTOTIC_THRESHOLD * 1.000_001).unwrap();
        assert!((below - above).norm() < 1e-9);
    }

    #[test]
    fn product_limit_closed_forms() {
        for sign in [LimitSign::Upper, LimitSign::Lower] {
            assert!((xi_product_limit(c(0.5, 0.0), sign) - 1.0).norm() < 1e-15);
        }
        let lower = xi_product_limit(c(0.3, 0.0), LimitSign::Lower);
        assert!((lower - c(0.0, PI * 0.1).exp()).norm() < 1e-15);
        // Complex m' makes the limit non-unimodular.
        let z = xi_product_limit(c(0.5, 0.2), LimitSign::Upper);
        assert!((z.norm() - (-PI * 0.1).exp()).abs() < 1e-14);
        let z = xi_product_limit(c(0.5, 0.2), LimitSign::Lower);
        assert!((z.norm() - (PI * 0.1).exp()).abs() < 1e-14);
    }

    #[test]
    fn product_limit_matches_large_t_evaluation() {
        let mp = c(0.5, 0.2);
        let upper = xi_product(c(0.5, 0.0), mp, -1e3).unwrap();
        assert!((upper - xi_product_limit(mp, LimitSign::Upper)).norm() < 5e-3);
        let lower = xi_product(c(0.5, 0.0), mp, 1e3).unwrap();
        assert!((lower - xi_product_limit(mp, LimitSign::Lower)).norm() < 5e-3);
    }

    #[test]
    fn xi_product_near_recalled_limit() {
        let v = xi(c(0.5, 0.0), 40.0).unwrap() * xi(c(0.3, 0.0), -40.0).unwrap();
        assert!((v - c(0.0, PI * 0.2 / 2.0).exp()).norm() < 1e-2);
    }

    #[test]
    fn cpow_cases() {
        assert!((cpow_half_square(2.0, c(0.3, -1.7)).unwrap() - 1.0).norm() < 1e-15);
        assert_eq!(cpow_half_square(0.0, c(0.3, 1.0)).unwrap(), c(0.0, 0.0));
        assert!((cpow_half_square(4.0, c(0.5, 0.0)).unwrap() - 2.0).norm() < 1e-15);
        assert_eq!(cpow_half_square(0.0, c(-0.3, 0.0)), Err(Error::DivergentPower));
        assert!(cpow_half_square(-1.0, c(0.3, 0.0)).is_err());
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI + 0.25) - (-PI + 0.25)).abs() < 1e-12);
    }
}
