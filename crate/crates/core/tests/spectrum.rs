use std::f64::consts::PI;

use levinson_core::model::{count_eigenvalues_with_tol, shooting_residual_default, DEFAULT_EXCEPTIONAL_TOL};
use levinson_core::{
    count_eigenvalues, eigen_modes, exceptional_kappa, is_exceptional, make_params, Branch, Complex64, Error,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn order() -> impl Strategy<Value = Complex64> {
    (prop_oneof![-0.95f64..-0.05, 0.05f64..0.95], -2.0f64..2.0).prop_map(|(a, b)| c(a, b))
}

fn coupling() -> impl Strategy<Value = Complex64> {
    (0.01f64..5.0, -PI..PI).prop_map(|(r, phi)| Complex64::from_polar(r, phi))
}

/// Counts strip indices by scanning instead of solving the linear inequality.
fn scanned_count(log_s: Complex64, m: Complex64) -> usize {
    (-20_000i64..=20_000)
        .filter(|&n| ((log_s + c(0.0, 2.0 * PI * n as f64)) / (2.0 * m)).im.abs() < PI / 2.0)
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closed_form_count_matches_scan(m in order(), kappa in coupling()) {
        let p = make_params(m, kappa).unwrap();
        prop_assume!(!is_exceptional(&p, 1e-6).exceptional);
        let count = count_eigenvalues(&p).unwrap();
        prop_assert_eq!(count, scanned_count(p.log_varsigma().unwrap(), m));
    }

    #[test]
    fn modes_solve_the_boundary_equation(m in order(), kappa in coupling()) {
        let p = make_params(m, kappa).unwrap();
        prop_assume!(!is_exceptional(&p, 1e-6).exceptional);
        let report = eigen_modes(&p).unwrap();
        prop_assert_eq!(report.count, report.modes.len());
        prop_assert!(report.modes.windows(2).all(|w| w[0].n < w[1].n));
        for mode in &report.modes {
            prop_assert!(mode.k.re > 0.0);
            prop_assert!(mode.strip_margin > 0.0);
            let lhs = (-2.0 * m * (mode.k / 2.0).ln()).exp();
            prop_assert!((lhs - p.varsigma()).norm() < 1e-10 * p.varsigma().norm().max(1.0),
                "k = {}: {} vs {}", mode.k, lhs, p.varsigma());
        }
    }

    #[test]
    fn real_parameters_have_at_most_one_real_mode(m in prop_oneof![-0.95f64..-0.05, 0.05f64..0.95], kappa in -5.0f64..5.0) {
        prop_assume!(kappa.abs() > 1e-3);
        let p = make_params(c(m, 0.0), c(kappa, 0.0)).unwrap();
        let report = eigen_modes(&p).unwrap();
        let positive = p.varsigma().re > 0.0;
        prop_assert_eq!(report.count, usize::from(positive));
        if positive {
            prop_assert!(report.modes[0].k.im.abs() < 1e-12 * report.modes[0].k.re);
        }
    }

    #[test]
    fn constructed_pairs_are_exceptional(
        m in order(),
        log_modulus in -3.0f64..3.0,
        pole in any::<bool>(),
    ) {
        let branch = if pole { Branch::Pole } else { Branch::Zero };
        let (kappa, witness) = exceptional_kappa(m, log_modulus, branch).unwrap();
        let p = make_params(m, kappa).unwrap();
        let check = is_exceptional(&p, DEFAULT_EXCEPTIONAL_TOL);
        prop_assert!(check.exceptional);
        prop_assert_eq!(check.witness, Some(witness));
        prop_assert_eq!(check.branch, Some(branch));
        let refused = matches!(count_eigenvalues(&p), Err(Error::Exceptional { .. }));
        prop_assert!(refused);
    }

    #[test]
    fn count_is_locally_constant(m in order(), kappa in coupling(), dm in -1.0f64..1.0, dk in -1.0f64..1.0) {
        let p = make_params(m, kappa).unwrap();
        prop_assume!(is_exceptional(&p, 1e-3).distance > 1e-3);
        let base = count_eigenvalues(&p).unwrap();
        for step in 1..=10 {
            let s = step as f64 * 1e-7;
            let q = make_params(m + c(dm * s, -dk * s), kappa * c(1.0 + dk * s, dm * s)).unwrap();
            prop_assert_eq!(count_eigenvalues_with_tol(&q, 1e-9).unwrap(), base);
        }
    }
}

#[test]
fn shooting_certifies_enumerated_modes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked_points = 0;
    while checked_points < 6 {
        let m = c(rng.gen_range(0.2..0.8) * if rng.gen::<bool>() { 1.0 } else { -1.0 }, rng.gen_range(-0.5..0.5));
        let kappa = Complex64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(-PI..PI));
        let p = make_params(m, kappa).unwrap();
        let report = eigen_modes(&p).unwrap();
        if report.count == 0 || report.modes.iter().any(|mode| mode.strip_margin < 0.05 || mode.k.norm() > 50.0) {
            continue;
        }
        for mode in &report.modes {
            let r = shooting_residual_default(&p, mode.k).unwrap();
            assert!(r.norm() < 1e-5, "m = {m}, kappa = {kappa}, k = {}: {r}", mode.k);
        }
        checked_points += 1;
    }
}

#[test]
fn shooting_rejects_probes_off_the_spectrum() {
    let p = make_params(c(0.3, 0.2), c(-0.8, 0.4)).unwrap();
    let modes = eigen_modes(&p).unwrap();
    for probe in [c(0.5, 0.0), c(1.0, 0.5), c(3.0, -1.0), c(0.8, 2.0), c(5.0, 0.0)] {
        assert!(modes.modes.iter().all(|mode| (mode.k - probe).norm() > 0.1));
        let r = shooting_residual_default(&p, probe).unwrap();
        assert!(r.norm() > 1e-2, "probe {probe}: {r}");
    }
}
