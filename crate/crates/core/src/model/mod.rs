//! Parameter space of `H_{m,κ}`: the combined constant `ς = κΓ(−m)/Γ(m)`,
//! exceptional pairs, and the closed-form eigenvalue enumeration.
//!
//! The decaying solution `√x K_m(kx)` has small-`x` coefficients
//! `a ∝ (k/2)^{−m}/Γ(1−m)` and `b ∝ −(k/2)^{m}/Γ(1+m)`; the boundary condition
//! `a/b = κ` becomes `(k/2)^{−2m} = ς`. With `L_n = (Log ς + 2πin)/(2m)` the
//! solutions are `k_n = 2e^{−L_n}`, and `Re k_n > 0` is the strip
//! `|Im L_n| < π/2`. Since `Im L_n` is affine in `n`, the admissible indices
//! form an interval whose two endpoints are also exactly the exceptional
//! branches `Im((Log ς + 2πin)/m) = ±π`.

pub mod frobenius;
pub mod shooting;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_functions::{log_gamma, wrap_angle};

pub use shooting::{shooting_residual, shooting_residual_default};

/// Default tolerance on the integer-ness of the strip-boundary index.
pub const DEFAULT_EXCEPTIONAL_TOL: f64 = 1e-9;

/// Validated `(m, κ)` with the cached combined constant `ς`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    m: Complex64,
    kappa: Complex64,
    varsigma: Complex64,
    /// `Log ς` with `Arg ∈ (−π, π]`; `None` iff `κ = 0`.
    log_varsigma: Option<Complex64>,
}

impl ModelParams {
    pub fn m(&self) -> Complex64 {
        self.m
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    pub fn varsigma(&self) -> Complex64 {
        self.varsigma
    }

    pub fn log_varsigma(&self) -> Option<Complex64> {
        self.log_varsigma
    }

    pub fn is_kappa_zero(&self) -> bool {
        self.log_varsigma.is_none()
    }
}

/// Builds `ModelParams`, rejecting `Re m = 0` and `|Re m| ≥ 1`.
pub fn make_params(m: Complex64, kappa: Complex64) -> Result<ModelParams> {
    let finite = m.re.is_finite() && m.im.is_finite() && kappa.re.is_finite() && kappa.im.is_finite();
    if !finite || m.re == 0.0 || m.re.abs() >= 1.0 {
        return Err(Error::InvalidOrder(m));
    }
    if kappa == Complex64::new(0.0, 0.0) {
        return Ok(ModelParams { m, kappa, varsigma: Complex64::new(0.0, 0.0), log_varsigma: None });
    }
    let raw = kappa.ln() + log_gamma(-m)? - log_gamma(m)?;
    let log_varsigma = Complex64::new(raw.re, wrap_angle(raw.im));
    let varsigma = log_varsigma.exp();
    Ok(ModelParams { m, kappa, varsigma, log_varsigma: Some(log_varsigma) })
}

/// The two exceptional branches, named after the sign of
/// `Im((Log ς + 2πin)/m) = ±π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `+π`: the symbol's denominator vanishes on `x > 0`.
    Pole,
    /// `−π`: the scattering function has a zero on `x > 0`.
    Zero,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Pole => 1.0,
            Branch::Zero => -1.0,
        }
    }
}

/// Real index `n*` solving `Im((Log ς + 2πin)/m) = sπ` on each branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct StripBoundaries {
    pub pole: f64,
    pub zero: f64,
}

impl StripBoundaries {
    pub fn lower(&self) -> f64 {
        self.pole.min(self.zero)
    }

    pub fn upper(&self) -> f64 {
        self.pole.max(self.zero)
    }

    /// Nearest integer and its distance, for each branch.
    pub fn nearest(&self) -> [(Branch, i64, f64); 2] {
        [Branch::Pole, Branch::Zero].map(|b| {
            let v = match b {
                Branch::Pole => self.pole,
                Branch::Zero => self.zero,
            };
            let r = v.round();
            (b, r as i64, (v - r).abs())
        })
    }
}

pub(crate) fn strip_boundaries(p: &ModelParams) -> Option<StripBoundaries> {
    let log_s = p.log_varsigma?;
    let (a, b) = (p.m.re, p.m.im);
    let norm_sqr = p.m.norm_sqr();
    let solve = |s: f64| ((s * PI * norm_sqr + b * log_s.re) / a - log_s.im) / (2.0 * PI);
    Some(StripBoundaries { pole: solve(1.0), zero: solve(-1.0) })
}

/// Outcome of the exceptional-pair test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalCheck {
    pub exceptional: bool,
    /// Nearest boundary integer when exceptional.
    pub witness: Option<i64>,
    pub branch: Option<Branch>,
    /// Distance from the closer boundary index to its nearest integer
    /// (`+∞` when `κ = 0`).
    pub distance: f64,
}

/// Flags `(m, κ)` whose strip-boundary index is within `tol` of an integer.
///
/// Both branches of the multivalued logarithm are covered by the closed-form
/// `n*`, so no branch enumeration is needed.
pub fn is_exceptional(p: &ModelParams, tol: f64) -> ExceptionalCheck {
    let Some(bounds) = strip_boundaries(p) else {
        return ExceptionalCheck { exceptional: false, witness: None, branch: None, distance: f64::INFINITY };
    };
    let [first, second] = bounds.nearest();
    let (branch, witness, distance) = if first.2 <= second.2 { first } else { second };
    if distance < tol {
        ExceptionalCheck { exceptional: true, witness: Some(witness), branch: Some(branch), distance }
    } else {
        ExceptionalCheck { exceptional: false, witness: None, branch: None, distance }
    }
}

/// The `κ` with `ln|ς| = log_modulus` that puts `m` exactly on the given
/// exceptional branch, together with the strip index `n` that hits `±π`.
pub fn exceptional_kappa(m: Complex64, log_modulus: f64, branch: Branch) -> Result<(Complex64, i64)> {
    if !(m.re.abs() > 0.0 && m.re.abs() < 1.0) || !m.im.is_finite() || !log_modulus.is_finite() {
        return Err(Error::InvalidOrder(m));
    }
    let target = (branch.sign() * PI * m.norm_sqr() + m.im * log_modulus) / m.re;
    let theta = wrap_angle(target);
    let n = ((target - theta) / (2.0 * PI)).round() as i64;
    let kappa = (Complex64::new(log_modulus, theta) + log_gamma(m)? - log_gamma(-m)?).exp();
    Ok((kappa, n))
}

/// One eigenvalue parameter `k_n` with `E_n = −k_n²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub n: i64,
    pub k: Complex64,
    pub energy: Complex64,
    /// `π/2 − |Im L_n|`, i.e. the angular distance of `k_n/2` from the imaginary axis.
    pub strip_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub modes: Vec<Mode>,
    pub count: usize,
    /// Distance of the strip-boundary indices to the nearest integer.
    pub margin: f64,
}

impl SpectrumReport {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.modes.iter().map(|m| m.energy).collect()
    }
}

/// Integer range `(lo, hi)` of admissible strip indices, inclusive.
fn admissible_range(p: &ModelParams, tol: f64) -> Result<Option<(i64, i64, f64)>> {
    let Some(bounds) = strip_boundaries(p) else {
        return Ok(None);
    };
    let check = is_exceptional(p, tol);
    if let (true, Some(witness)) = (check.exceptional, check.witness) {
        return Err(Error::Exceptional { witness, distance: check.distance });
    }
    let lo = bounds.lower().floor() as i64 + 1;
    let hi = bounds.upper().ceil() as i64 - 1;
    Ok(Some((lo, hi, check.distance)))
}

/// Enumerates every `k_n = 2 exp(−(Log ς + 2πin)/(2m))` with `Re k_n > 0`.
pub fn eigen_modes_with_tol(p: &ModelParams, tol: f64) -> Result<SpectrumReport> {
    let Some((lo, hi, margin)) = admissible_range(p, tol)? else {
        return Ok(SpectrumReport { modes: Vec::new(), count: 0, margin: f64::INFINITY });
    };
    let log_s = p.log_varsigma.expect("range exists only for kappa != 0");
    let mut modes = Vec::with_capacity((hi - lo + 1).max(0) as usize);
    for n in lo..=hi {
        let l = (log_s + Complex64::new(0.0, 2.0 * PI * n as f64)) / (2.0 * p.m);
        let k = 2.0 * (-l).exp();
        let energy = -(k * k);
        if !(k.re.is_finite() && k.im.is_finite() && energy.re.is_finite() && energy.im.is_finite()) {
            return Err(Error::ModeOverflow(n));
        }
        modes.push(Mode { n, k, energy, strip_margin: PI / 2.0 - l.im.abs() });
    }
    let count = modes.len();
    Ok(SpectrumReport { modes, count, margin })
}

pub fn eigen_modes(p: &ModelParams) -> Result<SpectrumReport> {
    eigen_modes_with_tol(p, DEFAULT_EXCEPTIONAL_TOL)
}

/// Number of eigenvalues, each strip index counted once.
///
/// Needs only the admissible index range, so it works even where the modes
/// themselves would overflow.
pub fn count_eigenvalues_with_tol(p: &ModelParams, tol: f64) -> Result<usize> {
    Ok(match admissible_range(p, tol)? {
        Some((lo, hi, _)) => (hi - lo + 1).max(0) as usize,
        None => 0,
    })
}

pub fn count_eigenvalues(p: &ModelParams) -> Result<usize> {
    count_eigenvalues_with_tol(p, DEFAULT_EXCEPTIONAL_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_out_of_range_orders() {
        for m in [c(0.0, 0.3), c(1.0, 0.0), c(-1.2, 0.5), c(f64::NAN, 0.0)] {
            assert!(matches!(make_params(m, c(1.0, 0.0)), Err(Error::InvalidOrder(_))));
        }
    }

    #[test]
    fn varsigma_examples() {
        let p = make_params(c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(p.varsigma(), c(0.0, 0.0));
        assert!(p.is_kappa_zero());

        let p = make_params(c(0.5, 0.0), c(-0.5, 0.0)).unwrap();
        assert!((p.varsigma() - 1.0).norm() < 1e-14);

        // Γ(−0.3)/Γ(0.3) from mpmath at 30 digits.
        let p = make_params(c(0.3, 0.0), c(1.0, 0.0)).unwrap();
        assert!((p.varsigma() - c(-1.446_348_430_082_417_2, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn exceptional_examples() {
        let robin = make_params(c(0.5, 0.0), c(-0.5, 0.0)).unwrap();
        assert!(!is_exceptional(&robin, 1e-9).exceptional);

        let p = make_params(c(0.5, 0.0), c(0.0, -0.5)).unwrap();
        let check = is_exceptional(&p, 1e-9);
        assert!(check.exceptional);
        assert_eq!(check.witness, Some(0));
        assert_eq!(check.branch, Some(Branch::Pole));

        let p = make_params(c(0.3, 1.0), c(0.0, 0.0)).unwrap();
        assert!(!is_exceptional(&p, 1e-9).exceptional);
    }

    #[test]
    fn robin_spectrum() {
        let p = make_params(c(0.5, 0.0), c(-0.5, 0.0)).unwrap();
        let report = eigen_modes(&p).unwrap();
        assert_eq!(report.count, 1);
        assert!((report.modes[0].k - 2.0).norm() < 1e-12);
        assert!((report.modes[0].energy + 4.0).norm() < 1e-12);
        assert_eq!(count_eigenvalues(&p).unwrap(), 1);
    }

    #[test]
    fn robin_with_repulsive_sign_has_no_modes() {
        let p = make_params(c(0.5, 0.0), c(0.5, 0.0)).unwrap();
        assert_eq!(eigen_modes(&p).unwrap().count, 0);
    }

    #[test]
    fn kappa_zero_is_empty() {
        let p = make_params(c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        let report = eigen_modes(&p).unwrap();
        assert_eq!(report.count, 0);
        assert!(report.margin.is_infinite());
    }

    #[test]
    fn real_parameters_count_follows_sign_of_varsigma() {
        for m in [0.1, 0.3, 0.55, 0.9] {
            for kappa in [-3.0, -0.2, 0.4, 2.5] {
                let p = make_params(c(m, 0.0), c(kappa, 0.0)).unwrap();
                let count = count_eigenvalues(&p).unwrap();
                let expect = usize::from(p.varsigma().re > 0.0);
                assert_eq!(count, expect, "m = {m}, kappa = {kappa}");
                if count == 1 {
                    let k = eigen_modes(&p).unwrap().modes[0].k;
                    assert!(k.im.abs() < 1e-12 && k.re > 0.0);
                }
            }
        }
    }

    #[test]
    fn high_count_stress_case_enumerates() {
        // Oracle: brute-force scan of the strip condition over a wide n range.
        let p = make_params(c(0.1, 2.0), c(1.0, 0.0)).unwrap();
        let log_s = p.log_varsigma().unwrap();
        let brute = (-2000..=2000)
            .filter(|&n| {
                let l = (log_s + c(0.0, 2.0 * PI * n as f64)) / (2.0 * p.m());
                l.im.abs() < PI / 2.0
            })
            .count();
        assert_eq!(brute, 40);
        assert_eq!(count_eigenvalues(&p).unwrap(), brute);
        let report = eigen_modes(&p).unwrap();
        assert_eq!(report.count, brute);
        assert!(report.modes.windows(2).all(|w| w[0].n < w[1].n));
    }

    #[test]
    fn modes_solve_the_boundary_equation() {
        for (m, kappa) in [(c(0.3, 0.4), c(2.0, -1.0)), (c(-0.6, 1.1), c(0.0, 3.0)), (c(0.2, -1.5), c(-1.0, 0.5))] {
            let p = make_params(m, kappa).unwrap();
            for mode in eigen_modes(&p).unwrap().modes {
                assert!(mode.k.re > 0.0);
                let lhs = (-2.0 * m * (mode.k / 2.0).ln()).exp();
                assert!((lhs - p.varsigma()).norm() < 1e-10 * p.varsigma().norm().max(1.0));
            }
        }
    }

    #[test]
    fn exceptional_pair_refuses_enumeration() {
        let p = make_params(c(0.5, 0.0), c(0.0, -0.5)).unwrap();
        assert!(matches!(eigen_modes(&p), Err(Error::Exceptional { witness: 0, .. })));
        assert!(count_eigenvalues(&p).is_err());
    }
}
