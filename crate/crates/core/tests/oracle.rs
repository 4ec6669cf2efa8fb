//! Series evaluation against the independent quadrature oracles.

use lab2w::mpbessel::{
    coeff_b, coeff_d, coeff_interference, gen_bessel, oracle_gen_bessel, oracle_two_wave_i, two_wave_i, CoeffKind,
    CoeffValue, Tolerance, TwoWaveArgs,
};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn tol() -> Tolerance {
    Tolerance::default()
}

#[test]
fn gen_bessel_matches_quadrature() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..60 {
        let (g, b) = (rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
        let r = rng.gen_range(-14..=14);
        let s = gen_bessel(r, g, b, &tol()).unwrap();
        let q = oracle_gen_bessel(r, g, b).unwrap();
        assert!((s - q).abs() < 1e-12, "J_{r}({g}, {b}): {s} vs {q}");
    }
}

#[test]
fn two_wave_matches_quadrature() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..20 {
        let a: [f64; 6] = std::array::from_fn(|_| rng.gen_range(-4.0..4.0));
        let args = TwoWaveArgs::new(a[0], a[1], a[2], a[3], a[4], a[5]);
        let (r, rp) = (rng.gen_range(-6..=6), rng.gen_range(-6..=6));
        let s = two_wave_i(r, rp, args, &tol()).unwrap();
        let q = oracle_two_wave_i(r, rp, args).unwrap();
        assert!((s - q).abs() < 1e-10, "I_{r},{rp}({a:?}): {s} vs {q}");
    }
}

fn oracle_b(r: i64, rp: i64, a: TwoWaveArgs, e1: f64, e2: f64, c: f64) -> f64 {
    let i = |x, y| oracle_two_wave_i(x, y, a).unwrap();
    e1 * e1 * (i(r + 2, rp) + i(r - 2, rp) + 2.0 * i(r, rp))
        + e2 * e2 * (i(r, rp + 2) + i(r, rp - 2) + 2.0 * i(r, rp))
        + 2.0 * e1 * e2 * c * (i(r - 1, rp - 1) + i(r + 1, rp + 1) + i(r - 1, rp + 1) + i(r + 1, rp - 1))
}

#[test]
fn coefficients_match_quadrature() {
    let a = TwoWaveArgs::new(1.3, -0.4, 0.9, 0.5, 0.7, -0.6);
    let (e1, e2, delta) = (0.3, 0.5, 0.8_f64);
    let pol2 = [delta.cos(), delta.sin()];
    for (r, rp) in [(0, 0), (1, -2), (-3, 1)] {
        let b = coeff_b(r, rp, a, e1, e2, delta, &tol()).unwrap();
        assert!((b - oracle_b(r, rp, a, e1, e2, delta.cos())).abs() < 1e-10);
        let d = coeff_d(r, rp, a, e1, e2, [1.0, 0.0], pol2, &tol()).unwrap();
        let i = |x, y| oracle_two_wave_i(x, y, a).unwrap();
        let c1 = e1 * (i(r + 1, rp) + i(r - 1, rp));
        let c2 = e2 * (i(r, rp + 1) + i(r, rp - 1));
        assert!((d[0] - (c1 + c2 * pol2[0])).abs() < 1e-10);
        assert!((d[1] - c2 * pol2[1]).abs() < 1e-10);
    }
}

#[test]
fn interference_coefficients_match_quadrature() {
    let (b1, b2, ap, am) = (0.6, -0.4, 1.2, 0.9);
    let a = TwoWaveArgs::interference(b1, b2, ap, am);
    let j = |x: i64, y: i64| oracle_two_wave_i(x + y, x - y, a).unwrap();
    let (e1, e2) = (0.4, 0.25);
    for (s1, s2) in [(0, 0), (1, -1), (-2, 1)] {
        let want_b = e1 * e1 * (j(s1 + 1, s2 + 1) + j(s1 - 1, s2 - 1) + 2.0 * j(s1, s2))
            + e2 * e2 * (j(s1 + 1, s2 - 1) + j(s1 - 1, s2 + 1) + 2.0 * j(s1, s2))
            + 2.0 * e1 * e2 * (j(s1 - 1, s2) + j(s1 + 1, s2) + j(s1, s2 + 1) + j(s1, s2 - 1));
        let want_d = e1 * (j(s1, s2) + j(s1 - 1, s2 - 1)) + e2 * (j(s1, s2 - 1) + j(s1 - 1, s2));
        match coeff_interference(CoeffKind::BPrime, s1, s2, b1, b2, ap, am, e1, e2, &tol()).unwrap() {
            CoeffValue::Scalar(v) => assert!((v - want_b).abs() < 1e-10),
            other => panic!("{other:?}"),
        }
        match coeff_interference(CoeffKind::DDoublePrime, s1, s2, b1, b2, ap, am, e1, e2, &tol()).unwrap() {
            CoeffValue::Vector(v) => assert!((v[0] - want_d).abs() < 1e-10 && v[1] == 0.0),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn single_wave_coefficients_use_even_generalized_values() {
    let b1 = 1.7;
    let e1 = 0.6;
    for s in -4..=4 {
        let g = |n: i64| gen_bessel(2 * n, 0.0, b1, &tol()).unwrap();
        match coeff_interference(CoeffKind::BPrimeSingle, s, 0, b1, 0.0, 0.0, 0.0, e1, 0.0, &tol()).unwrap() {
            CoeffValue::Scalar(v) => assert!((v - e1 * e1 * (g(s + 1) + g(s - 1) + 2.0 * g(s))).abs() < 1e-14),
            other => panic!("{other:?}"),
        }
        match coeff_interference(CoeffKind::DDoublePrimeSingle, s, 0, b1, 0.0, 0.0, 0.0, e1, 0.0, &tol()).unwrap() {
            CoeffValue::Vector(v) => assert!((v[0] - e1 * (g(s) + g(s - 1))).abs() < 1e-14),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn order_estimates_track_exact_gamma() {
    use lab2w::mpparams::{estimate_orders, MomentumChoice, MultiphotonParams};
    use lab2w::relkin::{FourVector, ScatteringKinematics, WaveConfig};
    use std::f64::consts::PI;

    let mut rng = StdRng::seed_from_u64(13);
    let e = 1.0 / (1.0 - 0.25_f64).sqrt();
    for _ in 0..200 {
        let theta = rng.gen_range(PI / 4.0..3.0 * PI / 4.0);
        let az = loop {
            let a = rng.gen_range(0.0..2.0 * PI);
            if a.cos().abs() >= 0.3 {
                break a;
            }
        };
        let ws = [
            WaveConfig::new(2e-6, rng.gen_range(1e-3..0.1), [1.0, 0.0]).unwrap(),
            WaveConfig::new(1.3e-6, rng.gen_range(1e-3..0.1), [1.0, 0.0]).unwrap(),
        ];
        let pi = FourVector::on_shell(1.0, e, [0.0, 0.0, 1.0]).unwrap();
        let kp = FourVector::photon(1e-3, [0.0, 1.0, 0.0]).unwrap();
        let dir = [theta.sin() * az.cos(), theta.sin() * az.sin(), theta.cos()];
        let pf = FourVector::on_shell(1.0, e - 1e-3, dir).unwrap();
        let kin = ScatteringKinematics::new(1.0, pi, pf, kp, &ws).unwrap();
        let p = MultiphotonParams::from_kinematics(&kin, &ws, MomentumChoice::Quasi).unwrap();
        let est = estimate_orders(&p, &kin, &ws);
        for j in 0..2 {
            let r = est.gamma_ratio[j].unwrap();
            assert!((0.1..=10.0).contains(&r), "theta {theta} az {az}: ratio {r}");
        }
        assert!(!est.geometry_suppressed);
    }
}
