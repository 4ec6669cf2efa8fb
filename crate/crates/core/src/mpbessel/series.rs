//! Series evaluation of the generalized and two-wave Bessel functions.
//!
//! Each evaluator precomputes the ordinary Bessel tables it needs once and
//! can then be queried for any index pair. The truncation windows are fixed
//! by the arguments and the tolerance only, never by the queried index, so
//! values are reproducible bit for bit.

use super::bessel::{order_window, tail_bound, BesselTable};
use super::{Tolerance, TwoWaveArgs};
use crate::{Error, Result};

/// Highest window escalation level tried before giving up.
const MAX_LEVEL: u32 = 1;

/// Fraction of the tolerance spent on dropping negligible outer-sum terms.
const PRUNE: f64 = 1e-3;

/// A function value together with a bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded {
    pub value: f64,
    pub bound: f64,
}

fn window(x: f64, level: u32, tol: &Tolerance) -> Result<i64> {
    let w = order_window(x, level);
    if w as usize > tol.max_terms {
        return Err(Error::Accuracy { requested: tol.eps, achieved: f64::INFINITY });
    }
    Ok(w)
}

/// Entries of `t` above `eps · PRUNE / (number of entries)` together with
/// the absolute sum of the dropped ones.
fn significant(t: &BesselTable, eps: f64) -> (Vec<(i64, f64)>, f64) {
    let all = t.nonzero();
    let cut = eps * PRUNE / all.len().max(1) as f64;
    let mut dropped = 0.0;
    let kept = all
        .into_iter()
        .filter(|&(_, v)| {
            let keep = v.abs() >= cut;
            if !keep {
                dropped += v.abs();
            }
            keep
        })
        .collect();
    (kept, dropped)
}

fn check_finite(vals: &[f64]) -> Result<()> {
    if vals.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite argument in {vals:?}")))
    }
}

/// The generalized Bessel function `J_r(γ, β) = Σ_k J_{r−2k}(γ) J_k(β)`.
#[derive(Debug, Clone)]
pub struct GenBessel {
    gamma: BesselTable,
    beta: BesselTable,
    bound: f64,
}

impl GenBessel {
    pub fn new(gamma: f64, beta: f64, tol: &Tolerance) -> Result<Self> {
        tol.validate()?;
        check_finite(&[gamma, beta])?;
        let mut achieved = f64::INFINITY;
        for level in 0..=MAX_LEVEL {
            let g = Self::at_level(gamma, beta, level, tol)?;
            if g.bound <= tol.eps {
                return Ok(g);
            }
            achieved = g.bound;
        }
        Err(Error::Accuracy { requested: tol.eps, achieved })
    }

    fn at_level(gamma: f64, beta: f64, level: u32, tol: &Tolerance) -> Result<Self> {
        let wg = window(gamma, level, tol)?;
        let wb = window(beta, level, tol)?;
        let bound = tail_bound(gamma, wg) + tail_bound(beta, wb);
        Ok(Self { gamma: BesselTable::new(gamma, wg), beta: BesselTable::new(beta, wb), bound })
    }

    /// Truncation-error bound of every value.
    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// Half-width beyond which values are below the tail bound.
    pub fn support(&self) -> i64 {
        self.gamma.half_width() + 2 * self.beta.half_width()
    }

    pub fn value(&self, r: i64) -> f64 {
        let (wg, wb) = (self.gamma.half_width(), self.beta.half_width());
        if self.beta.arg() == 0.0 {
            return if r.abs() <= wg { self.gamma.get(r) } else { super::bessel_int(r, self.gamma.arg()) };
        }
        if self.gamma.arg() == 0.0 {
            if r.rem_euclid(2) != 0 {
                return 0.0;
            }
            let k = r / 2;
            return if k.abs() <= wb { self.beta.get(k) } else { super::bessel_int(k, self.beta.arg()) };
        }
        let lo = (-wb).max((r - wg).div_euclid(2) + i64::from((r - wg).rem_euclid(2) != 0));
        let hi = wb.min((r + wg).div_euclid(2));
        let mut sum = 0.0;
        for k in lo..=hi {
            sum += self.gamma.get(r - 2 * k) * self.beta.get(k);
        }
        sum
    }

    /// Bound on `Σ_{|a| > support} |J_a(γ, β)|`.
    fn outside_mass(&self) -> f64 {
        self.gamma.abs_sum() * self.beta.tail() + self.beta.abs_sum() * self.gamma.tail()
    }

    fn table(&self) -> GenTable {
        let half = self.support();
        let vals = (-half..=half).map(|a| self.value(a)).collect();
        GenTable { half, vals, value_bound: self.bound, outside: self.outside_mass() }
    }
}

#[derive(Debug, Clone)]
struct GenTable {
    half: i64,
    vals: Vec<f64>,
    value_bound: f64,
    outside: f64,
}

impl GenTable {
    #[inline]
    fn get(&self, a: i64) -> f64 {
        if a.abs() > self.half {
            0.0
        } else {
            self.vals[(a + self.half) as usize]
        }
    }
}

/// `J_r(γ, β)` by the truncated series.
pub fn gen_bessel(r: i64, gamma: f64, beta: f64, tol: &Tolerance) -> Result<f64> {
    Ok(GenBessel::new(gamma, beta, tol)?.value(r))
}

pub fn gen_bessel_bounded(r: i64, gamma: f64, beta: f64, tol: &Tolerance) -> Result<Bounded> {
    let g = GenBessel::new(gamma, beta, tol)?;
    Ok(Bounded { value: g.value(r), bound: g.bound })
}

/// Evaluator for `I_rr'(γ1, β1; γ2, β2; α+, α−)`:
///
/// `I_rr' = Σ_j Σ_j' J_j(α+) J_j'(α−) J_{r−j−j'}(γ1, β1) J_{r'−j+j'}(γ2, β2)`.
#[derive(Debug, Clone)]
pub struct TwoWaveEvaluator {
    args: TwoWaveArgs,
    plus: Vec<(i64, f64)>,
    minus: Vec<(i64, f64)>,
    reach: i64,
    g1: GenTable,
    g2: GenTable,
    bound: f64,
}

impl TwoWaveEvaluator {
    pub fn new(args: TwoWaveArgs, tol: &Tolerance) -> Result<Self> {
        tol.validate()?;
        args.validate()?;
        let mut achieved = f64::INFINITY;
        for level in 0..=MAX_LEVEL {
            let ev = Self::at_level(args, level, tol)?;
            if ev.bound <= tol.eps {
                return Ok(ev);
            }
            achieved = ev.bound;
        }
        Err(Error::Accuracy { requested: tol.eps, achieved })
    }

    fn at_level(args: TwoWaveArgs, level: u32, tol: &Tolerance) -> Result<Self> {
        let wp = window(args.alpha_plus, level, tol)?;
        let wm = window(args.alpha_minus, level, tol)?;
        let ap = BesselTable::new(args.alpha_plus, wp);
        let am = BesselTable::new(args.alpha_minus, wm);
        let g1 = GenBessel::at_level(args.gamma1, args.beta1, level, tol)?.table();
        let g2 = GenBessel::at_level(args.gamma2, args.beta2, level, tol)?.table();
        let (sp, sm) = (ap.abs_sum(), am.abs_sum());
        let (plus, dp) = significant(&ap, tol.eps);
        let (minus, dm) = significant(&am, tol.eps);
        // Every generalized Bessel value is a Fourier coefficient of a
        // unimodular function, hence at most one in magnitude.
        let unit = (1.0 + g1.value_bound) * (1.0 + g2.value_bound);
        let bound = ap.tail()
            + am.tail()
            + sp * (g1.outside + g2.outside)
            + sp * sm * (g1.value_bound + g2.value_bound)
            + (dp * sm + sp * dm) * unit;
        Ok(Self { args, plus, minus, reach: wp + wm, g1, g2, bound })
    }

    pub fn args(&self) -> &TwoWaveArgs {
        &self.args
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// Half-widths in `r` and `r'` beyond which values are negligible.
    pub fn support(&self) -> (i64, i64) {
        (self.g1.half + self.reach, self.g2.half + self.reach)
    }

    pub fn eval(&self, r: i64, rp: i64) -> f64 {
        let mut sum = 0.0;
        for &(j, a) in &self.plus {
            let mut inner = 0.0;
            for &(jp, b) in &self.minus {
                inner += b * self.g1.get(r - j - jp) * self.g2.get(rp - j + jp);
            }
            sum += a * inner;
        }
        sum
    }
}

/// `I_rr'` by the truncated double series.
pub fn two_wave_i(r: i64, rp: i64, args: TwoWaveArgs, tol: &Tolerance) -> Result<f64> {
    Ok(TwoWaveEvaluator::new(args, tol)?.eval(r, rp))
}

pub fn two_wave_i_bounded(r: i64, rp: i64, args: TwoWaveArgs, tol: &Tolerance) -> Result<Bounded> {
    let ev = TwoWaveEvaluator::new(args, tol)?;
    Ok(Bounded { value: ev.eval(r, rp), bound: ev.bound })
}

/// Evaluator for the interference-range functions
///
/// `J_{r1 r2}(β1, β2; α+, α−) = Σ_j Σ_j' J_{r1−j−j'}(α+) J_{r2−j+j'}(α−) J_j(β1) J_j'(β2)`.
#[derive(Debug, Clone)]
pub struct InterferenceEvaluator {
    b1: Vec<(i64, f64)>,
    b2: Vec<(i64, f64)>,
    ap: BesselTable,
    am: BesselTable,
    reach: i64,
    bound: f64,
}

impl InterferenceEvaluator {
    pub fn new(beta1: f64, beta2: f64, alpha_plus: f64, alpha_minus: f64, tol: &Tolerance) -> Result<Self> {
        tol.validate()?;
        check_finite(&[beta1, beta2, alpha_plus, alpha_minus])?;
        let mut achieved = f64::INFINITY;
        for level in 0..=MAX_LEVEL {
            let w1 = window(beta1, level, tol)?;
            let w2 = window(beta2, level, tol)?;
            let t1 = BesselTable::new(beta1, w1);
            let t2 = BesselTable::new(beta2, w2);
            let ap = BesselTable::new(alpha_plus, window(alpha_plus, level, tol)?);
            let am = BesselTable::new(alpha_minus, window(alpha_minus, level, tol)?);
            let (b1, d1) = significant(&t1, tol.eps);
            let (b2, d2) = significant(&t2, tol.eps);
            let bound =
                t1.tail() + t2.tail() + t1.abs_sum() * (ap.tail() + am.tail()) + d1 * t2.abs_sum() + t1.abs_sum() * d2;
            if bound <= tol.eps {
                return Ok(Self { b1, b2, ap, am, reach: w1 + w2, bound });
            }
            achieved = bound;
        }
        Err(Error::Accuracy { requested: tol.eps, achieved })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// Half-widths in `r1` and `r2` beyond which values are negligible.
    pub fn support(&self) -> (i64, i64) {
        (self.ap.half_width() + self.reach, self.am.half_width() + self.reach)
    }

    pub fn eval(&self, r1: i64, r2: i64) -> f64 {
        let mut sum = 0.0;
        for &(j, b1) in &self.b1 {
            let mut inner = 0.0;
            for &(jp, b2) in &self.b2 {
                inner += b2 * self.ap.get(r1 - j - jp) * self.am.get(r2 - j + jp);
            }
            sum += b1 * inner;
        }
        sum
    }
}

/// `J_{r1 r2}(β1, β2; α+, α−)` by its own double series.
pub fn interference_j(
    r1: i64,
    r2: i64,
    beta1: f64,
    beta2: f64,
    alpha_plus: f64,
    alpha_minus: f64,
    tol: &Tolerance,
) -> Result<f64> {
    Ok(InterferenceEvaluator::new(beta1, beta2, alpha_plus, alpha_minus, tol)?.eval(r1, r2))
}

pub fn interference_j_bounded(
    r1: i64,
    r2: i64,
    beta1: f64,
    beta2: f64,
    alpha_plus: f64,
    alpha_minus: f64,
    tol: &Tolerance,
) -> Result<Bounded> {
    let ev = InterferenceEvaluator::new(beta1, beta2, alpha_plus, alpha_minus, tol)?;
    Ok(Bounded { value: ev.eval(r1, r2), bound: ev.bound })
}
