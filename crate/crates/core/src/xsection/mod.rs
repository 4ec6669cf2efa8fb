//! Partial cross-section weights and photon-number spectra.

mod baseline;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::mpbessel::{
    bessel_int, order_window, tail_bound, BesselTable, InterferenceEvaluator, Tolerance, TwoWaveEvaluator,
};
use crate::mpparams::MultiphotonParams;
use crate::{Error, Result};

pub use baseline::{baseline_dcs, BaselineKind};

/// Weights above this excess over one signal an evaluation bug.
pub const SUM_EXCESS_TOL: f64 = 1e-8;

/// Interference weights below this are treated as exact zeros in ratios.
pub const UNDERFLOW: f64 = 1e-300;

/// `I_ls` for a fixed parameter set. With both Bunkin–Fedorov parameters
/// zero only even `l + s` survive and `I_ls = J_{(l+s)/2, (l−s)/2}`, which is
/// evaluated by the interference series.
enum NonintEval {
    General(TwoWaveEvaluator),
    Reduced(InterferenceEvaluator),
}

impl NonintEval {
    fn new(params: &MultiphotonParams, tol: &Tolerance) -> Result<Self> {
        if params.gamma1 == 0.0 && params.gamma2 == 0.0 {
            Ok(Self::Reduced(interference_eval(params, tol)?))
        } else {
            Ok(Self::General(TwoWaveEvaluator::new(params.two_wave_args(), tol)?))
        }
    }

    fn amplitude(&self, l: i64, s: i64) -> f64 {
        match self {
            Self::General(ev) => ev.eval(l, s),
            Self::Reduced(ev) => {
                if (l + s).rem_euclid(2) != 0 {
                    0.0
                } else {
                    ev.eval((l + s) / 2, (l - s) / 2)
                }
            }
        }
    }
}

fn interference_eval(params: &MultiphotonParams, tol: &Tolerance) -> Result<InterferenceEvaluator> {
    InterferenceEvaluator::new(params.beta1, params.beta2, params.alpha_plus, params.alpha_minus, tol)
}

fn warn_if_not_moderate(params: &MultiphotonParams) {
    if params.xi1 > 0.1 || params.xi2 > 0.1 {
        log::warn!(
            "classical parameters xi1 = {:e}, xi2 = {:e} are not small: the moderate-field weights may not apply",
            params.xi1,
            params.xi2
        );
    }
}

fn warn_if_gamma_present(params: &MultiphotonParams) {
    if params.gamma1.abs() > 1e-6 || params.gamma2.abs() > 1e-6 {
        log::warn!("interference weights ignore gamma1 = {:e}, gamma2 = {:e}", params.gamma1, params.gamma2);
    }
}

/// `I_ls²` for photon numbers `l` of wave 1 and `s` of wave 2.
pub fn weight_noninterference(l: i64, s: i64, params: &MultiphotonParams, tol: &Tolerance) -> Result<f64> {
    warn_if_not_moderate(params);
    let a = NonintEval::new(params, tol)?.amplitude(l, s);
    Ok(a * a)
}

/// `(J_l(γ1) J_s(γ2))²`.
pub fn weight_factorized(l: i64, s: i64, gamma1: f64, gamma2: f64) -> f64 {
    let a = bessel_int(l, gamma1) * bessel_int(s, gamma2);
    a * a
}

/// `J_{l1 l2}²` for combination-photon numbers `l1` (sum frequency) and
/// `l2` (difference frequency).
pub fn weight_interference(l1: i64, l2: i64, params: &MultiphotonParams, tol: &Tolerance) -> Result<f64> {
    warn_if_gamma_present(params);
    let a = interference_eval(params, tol)?.eval(l1, l2);
    Ok(a * a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    EvenCombination,
    OddCombination,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMap {
    pub parity: Parity,
    pub l1: i64,
    pub l2: i64,
}

/// Half-sum and half-difference of the photon numbers `(l, s)`, rounded up
/// for odd combinations.
pub fn index_map(l: i64, s: i64) -> IndexMap {
    if (l + s).rem_euclid(2) == 0 {
        IndexMap { parity: Parity::EvenCombination, l1: (l + s) / 2, l2: (l - s) / 2 }
    } else {
        IndexMap { parity: Parity::OddCombination, l1: (l + s + 1) / 2, l2: (l - s + 1) / 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMode {
    /// `I_ls²` over photon numbers of both waves.
    Noninterference,
    /// `J_l(γ1)² J_s(γ2)²`.
    Factorized,
    /// `J_{l1 l2}²` over combination-photon numbers.
    Interference,
    /// `J_{l1}(β1)²` for a single wave in the perpendicular geometry; the
    /// second index is always zero.
    SingleWaveEven,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub idx1: i64,
    pub idx2: i64,
    pub weight: f64,
    pub cumulative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub mode: SpectrumMode,
    pub entries: Vec<SpectrumEntry>,
    /// Certified bound on the weight outside the enumerated cells.
    pub tail_bound: f64,
    /// Largest shell radius enumerated.
    pub radius: i64,
    /// The enumeration stopped at a radius limit before converging.
    pub truncated: bool,
    pub params: MultiphotonParams,
}

impl Spectrum {
    pub fn sum(&self) -> f64 {
        self.entries.last().map_or(0.0, |e| e.cumulative)
    }
}

/// Upper bound on `Σ_n |J_n(x)|` for every `|x| ≤ a`.
fn abs_sum_bound(a: f64) -> f64 {
    let n0 = order_window(a, 0);
    ((2 * n0 + 1) as f64).sqrt() + tail_bound(a, n0)
}

/// Bound on `Σ_{|r| > cut} |c_r|` for the Fourier coefficients `c_r` of
/// `exp(i[A sin(θ + δ) + b sin 2θ])`, uniformly in `|A| ≤ a_max` and `δ`.
fn marginal_abs_tail(a_max: f64, b: f64, cut: i64) -> f64 {
    if b == 0.0 {
        return tail_bound(a_max, cut);
    }
    let bt = BesselTable::new(b, order_window(b, 0));
    let mut best = f64::INFINITY;
    for k in 0..=bt.half_width() {
        if cut - 2 * k < 0 {
            break;
        }
        let t = bt.abs_sum() * tail_bound(a_max, cut - 2 * k) + tail_bound(b, k) * abs_sum_bound(a_max);
        best = best.min(t);
    }
    best
}

/// Squared-coefficient tail from an absolute tail: `Σ c² ≤ min(Σ|c|, (Σ|c|)²)`
/// since every `|c| ≤ 1`.
fn squared(t: f64) -> f64 {
    t.min(t * t)
}

enum CellEval {
    Nonint(NonintEval),
    Factorized(BesselTable, BesselTable),
    Interference(InterferenceEvaluator),
    Single(BesselTable),
}

impl CellEval {
    fn weight(&self, a: i64, b: i64) -> f64 {
        let v = match self {
            Self::Nonint(ev) => ev.amplitude(a, b),
            Self::Factorized(t1, t2) => t1.get(a) * t2.get(b),
            Self::Interference(ev) => ev.eval(a, b),
            Self::Single(t) => t.get(a),
        };
        v * v
    }
}

/// Cells of the square shell of radius `r` in lexicographic order.
fn shell(r: i64, one_dimensional: bool) -> Vec<(i64, i64)> {
    if r == 0 {
        return vec![(0, 0)];
    }
    if one_dimensional {
        return vec![(-r, 0), (r, 0)];
    }
    let mut cells = Vec::with_capacity(8 * r as usize);
    for a in -r..=r {
        if a.abs() == r {
            cells.extend((-r..=r).map(|b| (a, b)));
        } else {
            cells.push((a, -r));
            cells.push((a, r));
        }
    }
    cells
}

/// Photon-number spectrum enumerated in expanding square shells until the
/// accumulated weight reaches `1 − tail_tol` and the certified tail is below
/// `tail_tol`.
pub fn spectrum(mode: SpectrumMode, params: &MultiphotonParams, tail_tol: f64, tol: &Tolerance) -> Result<Spectrum> {
    spectrum_limited(mode, params, tail_tol, tol, None)
}

/// As [`spectrum`], but stops at `max_radius` if given; the result is then
/// marked truncated instead of failing.
pub fn spectrum_limited(
    mode: SpectrumMode,
    params: &MultiphotonParams,
    tail_tol: f64,
    tol: &Tolerance,
    max_radius: Option<i64>,
) -> Result<Spectrum> {
    if !(tail_tol > 0.0 && tail_tol < 0.1) {
        return Err(Error::Domain(format!("tail_tol must lie in (0, 0.1), got {tail_tol}")));
    }
    params.validate()?;
    let p = params;
    let max_arg = p.two_wave_args().max_abs();
    let cap = (4.0 * (max_arg + 50.0)).ceil() as i64;
    let alphas = p.alpha_plus.abs() + p.alpha_minus.abs();
    let (eval, tail_at): (CellEval, Box<dyn Fn(i64) -> f64 + Sync>) = match mode {
        SpectrumMode::Noninterference => {
            warn_if_not_moderate(p);
            let (a1, a2) = (p.gamma1.abs() + alphas, p.gamma2.abs() + alphas);
            let (b1, b2) = (p.beta1, p.beta2);
            (
                CellEval::Nonint(NonintEval::new(p, tol)?),
                Box::new(move |r| squared(marginal_abs_tail(a1, b1, r)) + squared(marginal_abs_tail(a2, b2, r))),
            )
        }
        SpectrumMode::Factorized => {
            let half = cap + 1;
            let (g1, g2) = (p.gamma1, p.gamma2);
            (
                CellEval::Factorized(BesselTable::new(g1, half), BesselTable::new(g2, half)),
                Box::new(move |r| squared(tail_bound(g1, r)) + squared(tail_bound(g2, r))),
            )
        }
        SpectrumMode::Interference => {
            warn_if_gamma_present(p);
            // J_{l1 l2}(β1, β2; α+, α−) = I_{l1 l2}(α+, 0; α−, 0; β1, β2).
            let a = p.alpha_plus.abs().max(p.alpha_minus.abs()) + p.beta1.abs() + p.beta2.abs();
            (CellEval::Interference(interference_eval(p, tol)?), Box::new(move |r| 2.0 * squared(tail_bound(a, r))))
        }
        SpectrumMode::SingleWaveEven => {
            if p.beta2 != 0.0 || p.alpha_plus != 0.0 || p.alpha_minus != 0.0 {
                return Err(Error::Domain("single-wave spectrum requires beta2 = alpha_plus = alpha_minus = 0".into()));
            }
            warn_if_gamma_present(p);
            let b = p.beta1;
            (CellEval::Single(BesselTable::new(b, cap + 1)), Box::new(move |r| squared(tail_bound(b, r))))
        }
    };
    let one_d = mode == SpectrumMode::SingleWaveEven;
    let mut entries = Vec::new();
    let mut cumulative = 0.0;
    let mut r = 0;
    loop {
        let cells = shell(r, one_d);
        let weights: Vec<f64> = cells.par_iter().map(|&(a, b)| eval.weight(a, b)).collect();
        for (&(a, b), w) in cells.iter().zip(weights) {
            cumulative += w;
            entries.push(SpectrumEntry { idx1: a, idx2: b, weight: w, cumulative });
        }
        if cumulative > 1.0 + SUM_EXCESS_TOL {
            return Err(Error::Normalization { radius: r, accumulated: cumulative });
        }
        let tail = tail_at(r);
        if cumulative >= 1.0 - tail_tol && tail <= tail_tol {
            if cumulative + tail < 1.0 - SUM_EXCESS_TOL {
                return Err(Error::Normalization { radius: r, accumulated: cumulative });
            }
            return Ok(Spectrum { mode, entries, tail_bound: tail, radius: r, truncated: false, params: *p });
        }
        if max_radius.is_some_and(|m| r >= m) {
            return Ok(Spectrum { mode, entries, tail_bound: tail, radius: r, truncated: true, params: *p });
        }
        r += 1;
        if r > cap {
            return Err(Error::Normalization { radius: r, accumulated: cumulative });
        }
    }
}

/// `I_ls² / J_{l1 l2}²` for the interference cell that `(l, s)` maps onto.
/// Returns `+∞` when the interference weight underflows.
pub fn ratio_regimes(
    l: i64,
    s: i64,
    noninterference: &MultiphotonParams,
    interference: &MultiphotonParams,
    tol: &Tolerance,
) -> Result<f64> {
    let map = index_map(l, s);
    if map.parity == Parity::OddCombination {
        return Err(Error::NoMatchingCell { l, s });
    }
    let num = {
        let a = NonintEval::new(noninterference, tol)?.amplitude(l, s);
        a * a
    };
    let den = {
        let a = interference_eval(interference, tol)?.eval(map.l1, map.l2);
        a * a
    };
    if den < UNDERFLOW {
        return Ok(f64::INFINITY);
    }
    Ok(num / den)
}

/// Field strength and polarization of the single wave equivalent to two
/// equal-frequency waves with polarizations `e_x` and `(cos δ, sin δ)`.
pub fn combined_wave(f1: f64, f2: f64, delta: f64) -> Result<(f64, [f64; 2])> {
    if !(f1 >= 0.0 && f2 >= 0.0) || !delta.is_finite() {
        return Err(Error::Domain(format!("field strengths must be nonnegative, got {f1}, {f2}")));
    }
    if f1 == 0.0 && f2 == 0.0 {
        return Err(Error::Domain("both field strengths vanish".into()));
    }
    let (sd, cd) = delta.sin_cos();
    let v = [f1 + f2 * cd, f2 * sd];
    let f = v[0].hypot(v[1]);
    if f <= 1e-14 * (f1 + f2) {
        return Err(Error::DegeneratePolarization);
    }
    Ok((f, [v[0] / f, v[1] / f]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpbessel::{gen_bessel, TwoWaveArgs};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn params(g1: f64, b1: f64, g2: f64, b2: f64, ap: f64, am: f64) -> MultiphotonParams {
        MultiphotonParams::from_args(TwoWaveArgs::new(g1, b1, g2, b2, ap, am))
    }

    #[test]
    fn fields_off_weights() {
        let p = MultiphotonParams::default();
        assert_eq!(weight_noninterference(0, 0, &p, &tol()).unwrap(), 1.0);
        assert_eq!(weight_noninterference(1, 0, &p, &tol()).unwrap(), 0.0);
        assert_eq!(weight_noninterference(-2, 3, &p, &tol()).unwrap(), 0.0);
        assert_eq!(weight_interference(0, 0, &p, &tol()).unwrap(), 1.0);
        assert_eq!(weight_factorized(0, 0, 0.0, 0.0), 1.0);
    }

    #[test]
    fn factorized_example() {
        let w = weight_factorized(1, 0, 2.0, 0.0);
        assert!((w - 0.576_724_807_756_873_4_f64.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn factorized_matches_noninterference_exactly() {
        let p = params(2.5, 0.0, -1.3, 0.0, 0.0, 0.0);
        for l in -4..=4 {
            for s in -4..=4 {
                let a = weight_noninterference(l, s, &p, &tol()).unwrap();
                assert_eq!(a.to_bits(), weight_factorized(l, s, 2.5, -1.3).to_bits());
            }
        }
    }

    #[test]
    fn interference_without_beta_is_bessel_product() {
        let p = params(0.0, 0.0, 0.0, 0.0, 1.7, -0.6);
        for (a, b) in [(0, 0), (1, -1), (2, 1), (-3, 0)] {
            let w = weight_interference(a, b, &p, &tol()).unwrap();
            let want = (bessel_int(a, 1.7) * bessel_int(b, -0.6)).powi(2);
            assert!((w - want).abs() < 1e-15);
        }
    }

    #[test]
    fn single_wave_interference_weights() {
        let b1 = 0.9;
        let p = params(0.0, b1, 0.0, 0.0, 0.0, 0.0);
        for l1 in -4..=4 {
            for l2 in -4..=4 {
                let w = weight_interference(l1, l2, &p, &tol()).unwrap();
                if l1 == l2 {
                    assert!((w - bessel_int(l1, b1).powi(2)).abs() < 1e-15);
                    let g = gen_bessel(l1 + l2, 0.0, b1, &tol()).unwrap();
                    assert!((w - g * g).abs() < 1e-15);
                } else {
                    assert_eq!(w, 0.0);
                }
            }
        }
    }

    #[test]
    fn index_map_examples() {
        assert_eq!(index_map(2, 0), IndexMap { parity: Parity::EvenCombination, l1: 1, l2: 1 });
        assert_eq!(index_map(1, 0), IndexMap { parity: Parity::OddCombination, l1: 1, l2: 1 });
        assert_eq!(index_map(0, 0), IndexMap { parity: Parity::EvenCombination, l1: 0, l2: 0 });
        assert_eq!(index_map(-3, 1), IndexMap { parity: Parity::EvenCombination, l1: -1, l2: -2 });
        assert_eq!(index_map(-2, 1), IndexMap { parity: Parity::OddCombination, l1: 0, l2: -1 });
    }

    #[test]
    fn fields_off_spectrum() {
        for mode in [
            SpectrumMode::Noninterference,
            SpectrumMode::Factorized,
            SpectrumMode::Interference,
            SpectrumMode::SingleWaveEven,
        ] {
            let s = spectrum(mode, &MultiphotonParams::default(), 1e-10, &tol()).unwrap();
            assert_eq!(s.entries, vec![SpectrumEntry { idx1: 0, idx2: 0, weight: 1.0, cumulative: 1.0 }]);
            assert_eq!(s.tail_bound, 0.0);
        }
    }

    #[test]
    fn factorized_spectrum_radius() {
        let s = spectrum(SpectrumMode::Factorized, &params(5.0, 0.0, 3.0, 0.0, 0.0, 0.0), 1e-3, &tol()).unwrap();
        assert!(s.sum() >= 0.999 && s.radius <= 12, "radius {}", s.radius);
    }

    #[test]
    fn shells_are_ordered() {
        let s = spectrum(SpectrumMode::Noninterference, &params(1.0, 0.3, 0.8, 0.2, 0.4, 0.1), 1e-9, &tol()).unwrap();
        let key = |e: &SpectrumEntry| (e.idx1.abs().max(e.idx2.abs()), e.idx1, e.idx2);
        assert!(s.entries.windows(2).all(|w| key(&w[0]) < key(&w[1])));
        assert!(s.entries.windows(2).all(|w| w[0].cumulative <= w[1].cumulative));
        assert!(s.sum() <= 1.0 + 1e-8 && s.sum() + s.tail_bound >= 1.0 - 1e-8);
    }

    #[test]
    fn radius_limit_reports_deficit() {
        let s =
            spectrum_limited(SpectrumMode::Factorized, &params(6.0, 0.0, 4.0, 0.0, 0.0, 0.0), 1e-10, &tol(), Some(2))
                .unwrap();
        assert!(s.truncated && s.radius == 2 && s.sum() < 0.9);
    }

    #[test]
    fn bad_tail_tol_rejected() {
        let p = MultiphotonParams::default();
        for t in [0.0, 0.1, -1.0, f64::NAN] {
            assert!(matches!(spectrum(SpectrumMode::Factorized, &p, t, &tol()), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn ratio_trivial_and_odd() {
        let p = MultiphotonParams::default();
        assert_eq!(ratio_regimes(0, 0, &p, &p, &tol()).unwrap(), 1.0);
        let q = params(0.0, 0.7, 0.0, 0.7, 0.7, 0.7);
        assert_eq!(ratio_regimes(0, 0, &q, &q, &tol()).unwrap(), 1.0);
        assert_eq!(ratio_regimes(1, 0, &p, &p, &tol()), Err(Error::NoMatchingCell { l: 1, s: 0 }));
    }

    #[test]
    fn ratio_infinite_on_underflow() {
        let non = params(1.0, 0.0, 1.0, 0.0, 0.0, 0.0);
        let int = MultiphotonParams::default();
        assert_eq!(ratio_regimes(2, 0, &non, &int, &tol()).unwrap(), f64::INFINITY);
    }

    #[test]
    fn combined_wave_examples() {
        let (f, e) = combined_wave(2.0, 3.0, 0.0).unwrap();
        assert!((f - 5.0).abs() < 1e-15 && (e[0] - 1.0).abs() < 1e-15 && e[1] == 0.0);
        let (f, _) = combined_wave(3.0, 4.0, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((f - 5.0).abs() < 1e-14);
        assert_eq!(combined_wave(2.0, 2.0, std::f64::consts::PI), Err(Error::DegeneratePolarization));
        assert!(matches!(combined_wave(0.0, 0.0, 0.0), Err(Error::Domain(_))));
    }
}
