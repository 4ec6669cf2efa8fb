//! Scalar and vector coefficient functions entering the dressed vertices.

use serde::{Deserialize, Serialize};

use super::bessel::bessel_int;
use super::series::{InterferenceEvaluator, TwoWaveEvaluator};
use super::{Tolerance, TwoWaveArgs};
use crate::{Error, Result};

/// `D_rr' = e1 η1 (I_{r+1,r'} + I_{r−1,r'}) + e2 η2 (I_{r,r'+1} + I_{r,r'−1})`,
/// returned as its in-plane spatial components.
#[allow(clippy::too_many_arguments)]
pub fn coeff_d(
    r: i64,
    rp: i64,
    args: TwoWaveArgs,
    eta1: f64,
    eta2: f64,
    pol1: [f64; 2],
    pol2: [f64; 2],
    tol: &Tolerance,
) -> Result<[f64; 2]> {
    let ev = TwoWaveEvaluator::new(args, tol)?;
    let c1 = eta1 * (ev.eval(r + 1, rp) + ev.eval(r - 1, rp));
    let c2 = eta2 * (ev.eval(r, rp + 1) + ev.eval(r, rp - 1));
    Ok([c1 * pol1[0] + c2 * pol2[0], c1 * pol1[1] + c2 * pol2[1]])
}

/// `B_rr'` with the cross term weighted by `cos Δ`.
pub fn coeff_b(r: i64, rp: i64, args: TwoWaveArgs, eta1: f64, eta2: f64, delta: f64, tol: &Tolerance) -> Result<f64> {
    let ev = TwoWaveEvaluator::new(args, tol)?;
    let i = |a, b| ev.eval(a, b);
    let centre = 2.0 * i(r, rp);
    let first = eta1 * eta1 * (i(r + 2, rp) + i(r - 2, rp) + centre);
    let second = eta2 * eta2 * (i(r, rp + 2) + i(r, rp - 2) + centre);
    // cos(π/2) is not exactly zero in floating point.
    let cos_delta = if (delta.abs() - std::f64::consts::FRAC_PI_2).abs() < 1e-15 { 0.0 } else { delta.cos() };
    let cross = if cos_delta == 0.0 {
        0.0
    } else {
        2.0 * eta1 * eta2 * cos_delta * (i(r - 1, rp - 1) + i(r + 1, rp + 1) + i(r - 1, rp + 1) + i(r + 1, rp - 1))
    };
    Ok(first + second + cross)
}

/// Which interference-range coefficient to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffKind {
    /// `B'_{s1 s2}` of two waves.
    BPrime,
    /// `D''_{s1 s2}` of two waves, directed along the common polarization.
    DDoublePrime,
    /// `B'_{s1}` with the second wave switched off.
    BPrimeSingle,
    /// `D''_{s1}` with the second wave switched off.
    DDoublePrimeSingle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoeffValue {
    Scalar(f64),
    Vector([f64; 2]),
}

/// Interference-range coefficients. Vector kinds point along `e_x`.
///
/// The single-wave kinds depend only on `s1` and `β1`: with the second wave
/// off, `J_{s1 s2}` is non-zero only for `s2 = s1`, where it equals the
/// ordinary `J_{s1}(β1)`.
#[allow(clippy::too_many_arguments)]
pub fn coeff_interference(
    kind: CoeffKind,
    s1: i64,
    s2: i64,
    beta1: f64,
    beta2: f64,
    alpha_plus: f64,
    alpha_minus: f64,
    eta1: f64,
    eta2: f64,
    tol: &Tolerance,
) -> Result<CoeffValue> {
    match kind {
        CoeffKind::BPrime | CoeffKind::DDoublePrime => {
            let ev = InterferenceEvaluator::new(beta1, beta2, alpha_plus, alpha_minus, tol)?;
            let j = |a, b| ev.eval(a, b);
            if kind == CoeffKind::BPrime {
                let centre = 2.0 * j(s1, s2);
                let v = eta1 * eta1 * (j(s1 + 1, s2 + 1) + j(s1 - 1, s2 - 1) + centre)
                    + eta2 * eta2 * (j(s1 + 1, s2 - 1) + j(s1 - 1, s2 + 1) + centre)
                    + 2.0 * eta1 * eta2 * (j(s1 - 1, s2) + j(s1 + 1, s2) + j(s1, s2 + 1) + j(s1, s2 - 1));
                Ok(CoeffValue::Scalar(v))
            } else {
                let v = eta1 * (j(s1, s2) + j(s1 - 1, s2 - 1)) + eta2 * (j(s1, s2 - 1) + j(s1 - 1, s2));
                Ok(CoeffValue::Vector([v, 0.0]))
            }
        }
        CoeffKind::BPrimeSingle | CoeffKind::DDoublePrimeSingle => {
            if eta2 != 0.0 {
                return Err(Error::Domain(format!("single-wave coefficient requires eta2 = 0, got {eta2}")));
            }
            let j = |n| bessel_int(n, beta1);
            if kind == CoeffKind::BPrimeSingle {
                Ok(CoeffValue::Scalar(eta1 * eta1 * (j(s1 + 1) + j(s1 - 1) + 2.0 * j(s1))))
            } else {
                Ok(CoeffValue::Vector([eta1 * (j(s1) + j(s1 - 1)), 0.0]))
            }
        }
    }
}
