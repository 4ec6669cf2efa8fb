use lab2w::mpbessel::{
    gen_bessel, interference_j, two_wave_i, GenBessel, InterferenceEvaluator, Tolerance, TwoWaveArgs, TwoWaveEvaluator,
};
use lab2w::mpparams::{alpha_pm, beta_param, bf_gamma, classify_regime, combined_beta, AlphaSign, MultiphotonParams};
use lab2w::relkin::{mdot, FourVector, ScatteringKinematics, WaveConfig};
use lab2w::xsection::{index_map, spectrum, weight_interference, weight_noninterference, Parity, SpectrumMode};
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn arg(max: f64) -> impl Strategy<Value = f64> {
    -max..max
}

fn direction() -> impl Strategy<Value = [f64; 3]> {
    (arg(1.0), arg(1.0), arg(1.0))
        .prop_filter("nonzero", |(x, y, z)| x * x + y * y + z * z > 0.05)
        .prop_map(|(x, y, z)| [x, y, z])
}

fn unit2() -> impl Strategy<Value = [f64; 2]> {
    (0.0..std::f64::consts::TAU).prop_map(|t: f64| [t.cos(), t.sin()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gen_bessel_parseval(g in arg(30.0), b in arg(15.0)) {
        let ev = GenBessel::new(g, b, &tol()).unwrap();
        let w = ev.support();
        let s: f64 = (-w..=w).map(|r| ev.value(r).powi(2)).sum();
        prop_assert!((s - 1.0).abs() < 1e-11, "{}", s);
    }

    #[test]
    fn gen_bessel_parity_in_gamma(g in arg(20.0), b in arg(10.0), r in -20i64..20) {
        let s = if r.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let a = gen_bessel(r, g, b, &tol()).unwrap();
        let c = gen_bessel(r, -g, b, &tol()).unwrap();
        prop_assert!((a - s * c).abs() < 1e-14);
    }

    #[test]
    fn factorization_without_interference(g1 in arg(8.0), b1 in arg(8.0), g2 in arg(8.0), b2 in arg(8.0), r in -10i64..10, rp in -10i64..10) {
        let i = two_wave_i(r, rp, TwoWaveArgs::new(g1, b1, g2, b2, 0.0, 0.0), &tol()).unwrap();
        let p = gen_bessel(r, g1, b1, &tol()).unwrap() * gen_bessel(rp, g2, b2, &tol()).unwrap();
        prop_assert!((i - p).abs() < 1e-12);
    }

    #[test]
    fn interference_functions_are_reduced_two_wave(b1 in arg(6.0), b2 in arg(6.0), ap in arg(6.0), am in arg(6.0), r1 in -6i64..=6, r2 in -6i64..=6) {
        let j = interference_j(r1, r2, b1, b2, ap, am, &tol()).unwrap();
        let i = two_wave_i(r1 + r2, r1 - r2, TwoWaveArgs::interference(b1, b2, ap, am), &tol()).unwrap();
        prop_assert!((i - j).abs() < 1e-13);
        // Exchanging the roles of the quadratic and interference arguments.
        let k = two_wave_i(r1, r2, TwoWaveArgs::new(ap, 0.0, am, 0.0, b1, b2), &tol()).unwrap();
        prop_assert!((k - j).abs() < 1e-13);
    }

    #[test]
    fn odd_total_vanishes_without_gamma(b1 in arg(6.0), b2 in arg(6.0), ap in arg(6.0), am in arg(6.0), r in -8i64..8, rp in -8i64..8) {
        prop_assume!((r + rp).rem_euclid(2) == 1);
        let ev = TwoWaveEvaluator::new(TwoWaveArgs::interference(b1, b2, ap, am), &tol()).unwrap();
        prop_assert!(ev.eval(r, rp).abs() < 1e-14);
    }

    #[test]
    fn weights_even_in_gamma(g1 in arg(6.0), b1 in arg(3.0), g2 in arg(6.0), b2 in arg(3.0), ap in arg(3.0), am in arg(3.0), l in -6i64..6, s in -6i64..6) {
        let p = MultiphotonParams::from_args(TwoWaveArgs::new(g1, b1, g2, b2, ap, am));
        let q = MultiphotonParams::from_args(TwoWaveArgs::new(-g1, b1, -g2, b2, ap, am));
        // A single flip is a symmetry only together with α± → −α± (shift φ1 by π).
        let r = MultiphotonParams::from_args(TwoWaveArgs::new(-g1, b1, g2, b2, -ap, -am));
        let w = weight_noninterference(l, s, &p, &tol()).unwrap();
        prop_assert!((w - weight_noninterference(l, s, &q, &tol()).unwrap()).abs() < 1e-13);
        prop_assert!((w - weight_noninterference(l, s, &r, &tol()).unwrap()).abs() < 1e-13);
        let f = MultiphotonParams::from_args(TwoWaveArgs::new(g1, b1, g2, b2, 0.0, 0.0));
        let h = MultiphotonParams::from_args(TwoWaveArgs::new(g1, b1, -g2, b2, 0.0, 0.0));
        prop_assert!((weight_noninterference(l, s, &f, &tol()).unwrap() - weight_noninterference(l, s, &h, &tol()).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn single_wave_reduction(g1 in arg(10.0), b1 in arg(5.0), l in -12i64..12, s in -4i64..4) {
        let p = MultiphotonParams::from_args(TwoWaveArgs::new(g1, b1, 0.0, 0.0, 0.0, 0.0));
        let w = weight_noninterference(l, s, &p, &tol()).unwrap();
        if s == 0 {
            prop_assert!((w - gen_bessel(l, g1, b1, &tol()).unwrap().powi(2)).abs() < 1e-12);
        } else {
            prop_assert_eq!(w, 0.0);
        }
    }

    #[test]
    fn single_wave_parity_exclusion(b1 in arg(5.0), l in -10i64..10, s in -10i64..10) {
        let p = MultiphotonParams::from_args(TwoWaveArgs::interference(b1, 0.0, 0.0, 0.0));
        let w = weight_noninterference(l, s, &p, &tol()).unwrap();
        let map = index_map(l, s);
        if map.parity == Parity::OddCombination {
            prop_assert_eq!(w, 0.0);
        } else {
            prop_assert_eq!(w, weight_interference(map.l1, map.l2, &p, &tol()).unwrap());
        }
    }

    #[test]
    fn spectra_are_normalized(g1 in arg(6.0), b1 in arg(3.0), g2 in arg(6.0), b2 in arg(3.0), ap in arg(3.0), am in arg(3.0)) {
        let p = MultiphotonParams::from_args(TwoWaveArgs::new(g1, b1, g2, b2, ap, am));
        let q = MultiphotonParams::from_args(TwoWaveArgs::interference(b1, b2, ap, am));
        for (mode, params) in [(SpectrumMode::Noninterference, p), (SpectrumMode::Factorized, p), (SpectrumMode::Interference, q)] {
            let sp = spectrum(mode, &params, 1e-9, &tol()).unwrap();
            let sum = sp.sum();
            prop_assert!((1.0 - 1e-9..=1.0 + 1e-8).contains(&sum), "{:?} {}", mode, sum);
            prop_assert!(sum + sp.tail_bound >= 1.0 - 1e-8);
            prop_assert!(sp.entries.iter().all(|e| e.weight >= 0.0));
        }
    }
}

fn waves_strategy() -> impl Strategy<Value = [WaveConfig; 2]> {
    (1e-3..0.05f64, 0.2..0.9f64, 0.0..2.0f64, 0.0..2.0f64, unit2(), unit2()).prop_map(|(w1, frac, e1, e2, p1, p2)| {
        [WaveConfig::new(w1, e1, p1).unwrap(), WaveConfig::new(w1 * frac, e2, p2).unwrap()]
    })
}

fn momentum() -> impl Strategy<Value = FourVector> {
    (1.05..4.0f64, direction()).prop_map(|(e, d)| FourVector::on_shell(1.0, e, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parameter_scaling(ws in waves_strategy(), p1 in momentum(), p2 in momentum(), lam in 0.1..3.0f64) {
        let scaled = |w: WaveConfig| WaveConfig { eta: w.eta * lam, ..w };
        let ws2 = [scaled(ws[0]), ws[1]];
        let g = bf_gamma(p1, p2, &ws[0], 1.0).unwrap();
        let g2 = bf_gamma(p1, p2, &ws2[0], 1.0).unwrap();
        prop_assert!((g2 - lam * g).abs() <= 1e-12 * g.abs().max(1e-300) * lam);
        let b = beta_param(p1, p2, &ws[0], 1.0).unwrap();
        let b2 = beta_param(p1, p2, &ws2[0], 1.0).unwrap();
        prop_assert!((b2 - lam * lam * b).abs() <= 1e-12 * (lam * lam * b).abs());
        let a = alpha_pm(AlphaSign::Plus, p1, p2, &ws, 1.0).unwrap();
        let a2 = alpha_pm(AlphaSign::Plus, p1, p2, &ws2, 1.0).unwrap();
        prop_assert!((a2 - lam * a).abs() <= 1e-12 * (lam * a).abs());
    }

    #[test]
    fn identical_momenta_give_zero(ws in waves_strategy(), p in momentum()) {
        prop_assert_eq!(bf_gamma(p, p, &ws[0], 1.0).unwrap(), 0.0);
        prop_assert_eq!(beta_param(p, p, &ws[1], 1.0).unwrap(), 0.0);
        prop_assert_eq!(alpha_pm(AlphaSign::Plus, p, p, &ws, 1.0).unwrap(), 0.0);
        prop_assert_eq!(alpha_pm(AlphaSign::Minus, p, p, &ws, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn alpha_exchange_symmetry(ws in waves_strategy(), p1 in momentum(), p2 in momentum()) {
        let sw = [ws[1], ws[0]];
        let (ap, am) = (alpha_pm(AlphaSign::Plus, p1, p2, &ws, 1.0).unwrap(), alpha_pm(AlphaSign::Minus, p1, p2, &ws, 1.0).unwrap());
        let (bp, bm) = (alpha_pm(AlphaSign::Plus, p1, p2, &sw, 1.0).unwrap(), alpha_pm(AlphaSign::Minus, p1, p2, &sw, 1.0).unwrap());
        prop_assert!((ap - bp).abs() <= 1e-13 * ap.abs().max(1e-300));
        prop_assert!((am + bm).abs() <= 1e-13 * am.abs().max(1e-300));
    }

    #[test]
    fn combined_beta_identity(w in 1e-3..0.05f64, e1 in 0.0..2.0f64, e2 in 0.0..2.0f64, pa in unit2(), pb in unit2(), p1 in momentum(), p2 in momentum()) {
        let ws = [WaveConfig::new(w, e1, pa).unwrap(), WaveConfig::new(w, e2, pb).unwrap()];
        let lhs = beta_param(p1, p2, &ws[0], 1.0).unwrap() + beta_param(p1, p2, &ws[1], 1.0).unwrap()
            + alpha_pm(AlphaSign::Plus, p1, p2, &ws, 1.0).unwrap();
        let rhs = combined_beta(p1, p2, &ws, 1.0).unwrap();
        let scale = (beta_param(p1, p2, &ws[0], 1.0).unwrap().abs() + beta_param(p1, p2, &ws[1], 1.0).unwrap().abs()).max(1e-300);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale.max(rhs.abs()));
    }

    #[test]
    fn gamma_vanishes_in_perpendicular_plane(e1 in 0.0..50.0f64, a in arg(1.0), b in arg(1.0), c in arg(1.0), d in arg(1.0), ei in 1.05..3.0f64, ef in 1.05..3.0f64) {
        prop_assume!(a.abs() + b.abs() > 0.1 && c.abs() + d.abs() > 0.1);
        let pi = FourVector::on_shell(1.0, ei, [0.0, a, b]).unwrap();
        let pf = FourVector::on_shell(1.0, ef, [0.0, c, d]).unwrap();
        let w = WaveConfig::new(1e-5, e1, [1.0, 0.0]).unwrap();
        prop_assert_eq!(bf_gamma(pi, pf, &w, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn quasimomenta_lie_on_effective_shell(ws in waves_strategy(), p in momentum()) {
        let kin = ScatteringKinematics::new(1.0, p, p, FourVector::photon(0.01, [0.0, 1.0, 0.0]).unwrap(), &ws).unwrap();
        let sq = mdot(kin.p_tilde_i, kin.p_tilde_i);
        prop_assert!((sq - kin.m_star * kin.m_star).abs() <= 1e-10 * kin.m_star * kin.m_star);
    }

    #[test]
    fn kinematic_class_scale_invariant(ws in waves_strategy(), ei in 1.2..3.0f64, ef in 1.2..3.0f64, lam in 0.7..1.5f64, in_plane in any::<bool>()) {
        // Geometries whose plane angles are exactly 0 or π/2.
        let build = |scale: f64| {
            let e = |en: f64| 1.0 + (en - 1.0) * scale;
            let (pf_dir, k_dir) = if in_plane { ([0.6, 0.0, 0.8], [-1.0, 0.0, 0.3]) } else { ([0.0, 0.6, 0.8], [0.0, -1.0, 0.3]) };
            let pi = FourVector::on_shell(1.0, e(ei), [0.0, 0.0, 1.0]).unwrap();
            let pf = FourVector::on_shell(1.0, e(ef), pf_dir).unwrap();
            let kp = FourVector::photon(0.01, k_dir).unwrap();
            let ws = [WaveConfig { pol: [1.0, 0.0], ..ws[0] }, WaveConfig { pol: [1.0, 0.0], ..ws[1] }];
            (ScatteringKinematics::new(1.0, pi, pf, kp, &ws).unwrap(), ws)
        };
        let (k1, w1) = build(1.0);
        let (k2, w2) = build(lam);
        let a = classify_regime(&k1, &w1, 1.0).unwrap();
        let b = classify_regime(&k2, &w2, 1.0).unwrap();
        prop_assert_eq!(&a, &classify_regime(&k1, &w1, 1.0).unwrap());
        prop_assert_eq!(k1.phi, k2.phi);
        if a.kinematic != lab2w::mpparams::KinematicClass::Interference {
            prop_assert_eq!(a.kinematic, b.kinematic);
        }
    }
}

#[test]
fn interference_evaluator_matches_free_function() {
    let ev = InterferenceEvaluator::new(0.4, -0.3, 1.1, 0.8, &tol()).unwrap();
    for r1 in -3..=3 {
        for r2 in -3..=3 {
            assert_eq!(ev.eval(r1, r2), interference_j(r1, r2, 0.4, -0.3, 1.1, 0.8, &tol()).unwrap());
        }
    }
}
