use std::f64::consts::PI;

use levinson_core::hankel::{
    bessel_j, hat_j, kernel, kernel_boundary_ratio, kernel_ode_residual, roundtrip_residual, GaussianBump, KernelSign,
};
use levinson_core::special_functions::log_gamma;
use levinson_core::{make_params, Complex64};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(z, Re J, Im J)` rows for one order.
type Rows = &'static [(f64, f64, f64)];

// J_ν(z) from mpmath.besselj at 30 digits: (order, rows).
const BESSEL_TABLE: &[((f64, f64), Rows)] = &[
    ((0.3, 0.1), &[
        (0.5, 0.6995352735706657, -0.08302434097662366),
        (2.0, 0.43054810140191946, 0.053379342250213305),
        (10.0, -0.1968524491678413, 0.02480347212565843),
        (13.9, 0.215991471110175, 0.0023740751305360657),
        (14.1, 0.20715062377506693, 0.008862494466592367),
        (19.9, 0.1770159139572454, -0.005829269097810826),
        (20.1, 0.18009788075040506, -0.0002829022352803086),
        (17.0, -0.195735058794951, -0.0009274750471273333),
        (25.0, 0.02860086435682759, -0.02457874527740457),
        (40.0, 0.06440876828977568, 0.017099172717145894),
        (59.0, 0.03876214721995933, 0.015180368314834903),
    ]),
    ((-0.3, 0.1), &[
        (0.5, 1.0825550380486388, -0.004724241344475563),
        (2.0, -0.04288856224791106, 0.09587344337867232),
        (10.0, -0.2473402454150505, -0.010096045372697442),
        (13.9, 0.11462706280948803, 0.029025748198544858),
        (14.1, 0.07525427010496069, 0.031812914433578435),
        (19.9, 0.13470366787345522, 0.019030548843477133),
        (20.1, 0.1074273627882206, 0.022745503401329335),
        (18.0, 0.07456379364642642, -0.027584960955886136),
        (25.0, 0.14546314359254658, -0.011041652337246194),
        (40.0, -0.05135905107751895, 0.01830641682910187),
        (59.0, -0.05630231111696971, 0.013883482337131825),
    ]),
    ((0.5, 2.0), &[
        (0.5, -2.076486254857216, 0.7444067648222352),
        (2.0, 3.315161919552336, -1.4084201250250858),
        (10.0, -0.9769643879705528, 2.425116573102294),
        (13.9, 2.136202858866188, -0.8445827252226056),
        (14.1, 2.2493940781145247, -0.39838476162172165),
        (19.9, 1.6019301972300193, -1.1375232095439862),
        (20.1, 1.7897093714354613, -0.7926292182629066),
        (18.0, -1.683587925234869, -1.1765467800662381),
        (25.0, -0.37320723135231465, -1.7281697259764104),
        (40.0, 1.108100880066271, 0.8933466285992139),
        (59.0, 0.7840273621459143, 0.8833046022419493),
    ]),
    ((-0.7, -1.5), &[
        (0.5, 7.8772312953900965, 8.938144529722917),
        (2.0, -0.857389908289801, -4.204030673278536),
        (10.0, -1.0480295807232418, 1.0305414722235773),
        (13.9, -0.002741136591722935, -1.20465161782379),
        (14.1, -0.24505308462933767, -1.1702855617633912),
        (19.9, 0.2554184999073103, -0.9526740769193559),
        (20.1, 0.057131949215882, -0.9782513322163781),
        (17.0, -0.027730354085923628, 1.0748819515211947),
        (25.0, 0.8757226900491167, -0.1217381349970833),
        (40.0, -0.5865214744534107, -0.35510346117717295),
        (59.0, -0.5196251666533723, -0.2118867802959536),
    ]),
];

#[test]
fn bessel_matches_reference_table() {
    for &((re, im), rows) in BESSEL_TABLE {
        for &(z, vre, vim) in rows {
            let expected = c(vre, vim);
            let got = bessel_j(c(re, im), z).unwrap();
            assert!((got - expected).norm() < 1e-11 * expected.norm(), "nu = {re}+{im}i, z = {z}: {got}");
        }
    }
}

#[test]
fn bessel_wronskian() {
    let nu = c(0.3, 0.1);
    let z = 2.0;
    let h = 1e-3;
    let d = |order: Complex64| {
        let f = |x: f64| bessel_j(order, x).unwrap();
        (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h)
    };
    let w = bessel_j(nu, z).unwrap() * d(-nu) - d(nu) * bessel_j(-nu, z).unwrap();
    let expected = -2.0 * (PI * nu).sin() / (PI * z);
    assert!((w - expected).norm() < 1e-8, "{w} vs {expected}");
}

#[test]
fn hat_j_small_argument_leading_term() {
    let m = c(0.3, 0.0);
    let z: f64 = 1e-3;
    let lead = (PI / 2.0).sqrt() * z.powf(0.8) * 2f64.powf(-0.3) / log_gamma(m + 1.0).unwrap().exp();
    let v = hat_j(m, z).unwrap();
    assert!((v - lead).norm() < 1e-2 * lead.norm());
    assert_eq!(hat_j(c(-0.5, 0.0), 1e-9).unwrap(), c((1e-9f64).cos(), 0.0));
}

#[test]
fn sine_kernel_degeneration() {
    let p = make_params(c(0.5, 0.0), c(0.0, 0.0)).unwrap();
    for sign in [KernelSign::Minus, KernelSign::Plus] {
        let phase = c(0.0, sign.value() * PI / 4.0).exp() * (2.0 / PI).sqrt();
        for (x, y) in [(0.1, 0.2), (1.0, PI / 2.0), (3.0, 7.0), (7.5, 8.0), (60.0, 1.0)] {
            let v = kernel(&p, sign, x, y).unwrap();
            assert!((v - phase * (x * y).sin()).norm() < 1e-12, "{x} {y}");
        }
    }
}

#[test]
fn kappa_zero_kernel_is_plain_bessel() {
    let m = c(-0.3, 0.6);
    let p = make_params(m, c(0.0, 0.0)).unwrap();
    for sign in [KernelSign::Minus, KernelSign::Plus] {
        let v = kernel(&p, sign, 1.7, 2.3).unwrap();
        let expected = (c(0.0, sign.value() * PI / 2.0) * m).exp() * (2.0 / PI).sqrt() * hat_j(m, 1.7 * 2.3).unwrap();
        assert!((v - expected).norm() < 1e-14);
    }
}

#[test]
fn kernels_solve_the_radial_equation() {
    let cases = [
        (c(0.5, 0.0), c(0.0, 0.0)),
        (c(0.3, 0.0), c(1.0, 0.0)),
        (c(-0.3, 0.1), c(0.0, 1.0)),
        (c(0.7, -0.4), c(-0.5, 2.0)),
    ];
    for (m, kappa) in cases {
        let p = make_params(m, kappa).unwrap();
        for sign in [KernelSign::Minus, KernelSign::Plus] {
            for (x, y) in [(2.0, 1.5), (0.5, 4.0), (5.0, 2.0)] {
                let r = kernel_ode_residual(&p, sign, x, y, 1e-3).unwrap();
                assert!(r < 1e-6, "m = {m}, kappa = {kappa}, ({x}, {y}): {r:e}");
            }
        }
    }
    let sine = make_params(c(0.5, 0.0), c(0.0, 0.0)).unwrap();
    assert!(kernel_ode_residual(&sine, KernelSign::Minus, 2.0, 1.5, 1e-3).unwrap() < 1e-9);
}

#[test]
fn finite_difference_residual_is_fourth_order() {
    for (m, kappa) in [(c(0.3, 0.0), c(1.0, 0.0)), (c(-0.3, 0.1), c(0.0, 1.0))] {
        let p = make_params(m, kappa).unwrap();
        let coarse = kernel_ode_residual(&p, KernelSign::Minus, 2.0, 1.5, 0.2).unwrap();
        let fine = kernel_ode_residual(&p, KernelSign::Minus, 2.0, 1.5, 0.1).unwrap();
        let ratio = fine / coarse;
        assert!((ratio - 1.0 / 16.0).abs() < 0.01, "m = {m}: ratio {ratio}");
    }
}

#[test]
fn kernel_boundary_ratio_is_kappa() {
    let cases = [
        (c(0.3, 0.0), c(1.0, 0.0)),
        (c(-0.3, 0.1), c(0.0, 1.0)),
        (c(0.7, -0.4), c(-0.5, 2.0)),
        (c(-0.6, 0.9), c(1.5, -0.2)),
    ];
    for (m, kappa) in cases {
        let p = make_params(m, kappa).unwrap();
        for sign in [KernelSign::Minus, KernelSign::Plus] {
            for y in [0.5, 1.0, 3.0] {
                let ratio = kernel_boundary_ratio(&p, sign, y, 1e-4, 1e-3, 9).unwrap();
                assert!((ratio - kappa).norm() < 1e-6 * kappa.norm().max(1.0), "m = {m}, y = {y}: {ratio}");
            }
        }
    }
}

#[test]
fn roundtrip_on_standard_bump() {
    let bump = GaussianBump::STANDARD;
    for (m, kappa) in [(c(0.5, 0.0), c(0.0, 0.0)), (c(0.3, 0.0), c(0.0, 0.0)), (c(0.3, 0.0), c(1.0, 0.0))] {
        let p = make_params(m, kappa).unwrap();
        let r = roundtrip_residual(&p, &bump, 12.0, 5.0, 64).unwrap();
        assert!(r < 5e-2, "m = {m}, kappa = {kappa}: {r}");
    }
}

#[test]
fn roundtrip_improves_with_quadrature() {
    let bump = GaussianBump::STANDARD;
    for (m, kappa) in [(c(0.5, 0.0), c(0.0, 0.0)), (c(0.7, -0.4), c(-0.5, 2.0))] {
        let p = make_params(m, kappa).unwrap();
        let coarse = roundtrip_residual(&p, &bump, 12.0, 5.0, 64).unwrap();
        let fine = roundtrip_residual(&p, &bump, 12.0, 5.0, 128).unwrap();
        assert!(fine < coarse, "m = {m}: {fine} vs {coarse}");
    }
}
