//! Bessel functions of complex order and positive real argument.
//!
//! The ascending series, summed in double-double, is used up to
//! [`SERIES_LIMIT`]; above it the Hankel asymptotic expansion takes over,
//! since the series terms reach about `e^z` against a result of size one.
//! Arguments above [`WINDOW`] are refused.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_functions::log_gamma;

/// Largest accepted argument.
pub const WINDOW: f64 = 60.0;
/// Arguments above this use the asymptotic expansion.
pub const SERIES_LIMIT: f64 = 20.0;
const MAX_TERMS: usize = 300;

/// Neumaier-compensated complex accumulator.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, term: Complex64) {
        self.sum = Complex64::new(
            two_sum(self.sum.re, term.re, &mut self.carry.re),
            two_sum(self.sum.im, term.im, &mut self.carry.im),
        );
    }

    fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

fn two_sum(a: f64, b: f64, carry: &mut f64) -> f64 {
    let s = a + b;
    *carry += if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    s
}

fn is_half_integer(order: Complex64, target: f64) -> bool {
    order.im == 0.0 && order.re == target
}

fn check_argument(z: f64) -> Result<()> {
    if !(z > 0.0) {
        return Err(Error::InvalidArgument(format!("Bessel argument must be positive, got {z}")));
    }
    if z > WINDOW {
        return Err(Error::OutOfWindow(z));
    }
    Ok(())
}

fn check_order(order: Complex64) -> Result<()> {
    if order.im == 0.0 && order.re < 0.0 && order.re == order.re.round() {
        return Err(Error::GammaPole(order + 1.0));
    }
    Ok(())
}

/// Double-double arithmetic for the ascending series, whose terms grow to
/// about `e^z` before cancelling down to `O(1)`.
mod dd {
    use std::ops::{Add, Div, Mul, Neg, Sub};

    #[derive(Debug, Clone, Copy, Default)]
    pub struct Dd {
        hi: f64,
        lo: f64,
    }

    fn quick_two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, a.mul_add(b, -p))
    }

    impl Dd {
        pub fn from_f64(x: f64) -> Self {
            Dd { hi: x, lo: 0.0 }
        }

        pub fn product(a: f64, b: f64) -> Self {
            let (p, e) = two_prod(a, b);
            Dd { hi: p, lo: e }
        }

        pub fn to_f64(self) -> f64 {
            self.hi + self.lo
        }
    }

    impl Add for Dd {
        type Output = Dd;
        fn add(self, y: Dd) -> Dd {
            let (s, e) = two_sum(self.hi, y.hi);
            let (t, f) = two_sum(self.lo, y.lo);
            let r = quick_two_sum(s, e + t);
            quick_two_sum(r.hi, r.lo + f)
        }
    }

    impl Neg for Dd {
        type Output = Dd;
        fn neg(self) -> Dd {
            Dd { hi: -self.hi, lo: -self.lo }
        }
    }

    impl Sub for Dd {
        type Output = Dd;
        fn sub(self, y: Dd) -> Dd {
            self + (-y)
        }
    }

    impl Mul for Dd {
        type Output = Dd;
        fn mul(self, y: Dd) -> Dd {
            let (p, e) = two_prod(self.hi, y.hi);
            quick_two_sum(p, e + (self.hi * y.lo + self.lo * y.hi))
        }
    }

    impl Div for Dd {
        type Output = Dd;
        fn div(self, y: Dd) -> Dd {
            let q1 = self.hi / y.hi;
            let r = self - y * Dd::from_f64(q1);
            let q2 = r.hi / y.hi;
            let r = r - y * Dd::from_f64(q2);
            let q3 = r.hi / y.hi;
            quick_two_sum(q1, q2) + Dd::from_f64(q3)
        }
    }

    #[derive(Debug, Clone, Copy, Default)]
    pub struct CDd {
        pub re: Dd,
        pub im: Dd,
    }

    impl CDd {
        pub fn mul(self, y: CDd) -> CDd {
            CDd { re: self.re * y.re - self.im * y.im, im: self.re * y.im + self.im * y.re }
        }

        /// `self · r / d` for real `r`.
        pub fn scale_div(self, r: Dd, d: CDd) -> CDd {
            let norm = d.re * d.re + d.im * d.im;
            let conj = CDd { re: d.re, im: -d.im };
            let num = self.mul(conj);
            CDd { re: num.re * r / norm, im: num.im * r / norm }
        }

        pub fn add(self, y: CDd) -> CDd {
            CDd { re: self.re + y.re, im: self.im + y.im }
        }

        pub fn norm_estimate(self) -> f64 {
            self.re.to_f64().hypot(self.im.to_f64())
        }
    }
}

/// `Σ_j (−z²/4)^j / (j! (ν+1)_j)`, accumulated in double-double.
fn reduced_series(order: Complex64, z: f64) -> Complex64 {
    use dd::{CDd, Dd};
    let q = -(Dd::product(z, z) * Dd::from_f64(0.25));
    let one = CDd { re: Dd::from_f64(1.0), im: Dd::default() };
    let mut term = one;
    let mut sum = one;
    for j in 1..MAX_TERMS {
        let jf = j as f64;
        // j(ν + j), exact in double-double.
        let denom = CDd { re: Dd::product(jf, order.re) + Dd::product(jf, jf), im: Dd::product(jf, order.im) };
        term = term.scale_div(q, denom);
        sum = sum.add(term);
        if term.norm_estimate() < 1e-32 * sum.norm_estimate() {
            break;
        }
    }
    Complex64::new(sum.re.to_f64(), sum.im.to_f64())
}

/// `Ĵ_ν(z) = √(πz/2)·J_ν(z)` by the ascending series.
fn hat_j_series(order: Complex64, z: f64) -> Result<Complex64> {
    // √(π/2) z^{½+ν} 2^{−ν} / Γ(ν+1)
    let log_lead = (0.5 + order) * z.ln() - order * LN_2 - log_gamma(order + 1.0)?;
    Ok(FRAC_PI_2.sqrt() * log_lead.exp() * reduced_series(order, z))
}

/// `Ĵ_ν(z) = P cos ω − Q sin ω` with `ω = z − νπ/2 − π/4`.
fn hat_j_asymptotic(order: Complex64, z: f64) -> Complex64 {
    let mu = 4.0 * order * order;
    let mut p = CompensatedSum::default();
    let mut q = CompensatedSum::default();
    let mut term = Complex64::new(1.0, 0.0);
    p.add(term);
    let mut previous = f64::INFINITY;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * z);
        let size = term.norm();
        if size > previous {
            break;
        }
        previous = size;
        // a_k z^{-k} enters P (k even) or Q (k odd) with sign (−1)^{⌊k/2⌋}.
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p.add(signed);
        } else {
            q.add(signed);
        }
        if size < 1e-17 {
            break;
        }
    }
    let omega = z - order * FRAC_PI_2 - FRAC_PI_4;
    p.value() * omega.cos() - q.value() * omega.sin()
}

/// Riccati–Bessel form `Ĵ_ν(z) = √(πz/2)·J_ν(z)` for `0 < z ≤ 60`.
///
/// Orders `±½` return `sin z` and `cos z` directly.
pub fn hat_j(order: Complex64, z: f64) -> Result<Complex64> {
    check_argument(z)?;
    check_order(order)?;
    if is_half_integer(order, 0.5) {
        return Ok(Complex64::new(z.sin(), 0.0));
    }
    if is_half_integer(order, -0.5) {
        return Ok(Complex64::new(z.cos(), 0.0));
    }
    if z <= SERIES_LIMIT {
        hat_j_series(order, z)
    } else {
        Ok(hat_j_asymptotic(order, z))
    }
}

/// `J_ν(z)` for complex `ν` and `0 < z ≤ 60`.
pub fn bessel_j(order: Complex64, z: f64) -> Result<Complex64> {
    Ok(hat_j(order, z)? * (2.0 / (std::f64::consts::PI * z)).sqrt())
}
