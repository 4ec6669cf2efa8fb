//! Quadrature oracles for the generalized and two-wave functions.
//!
//! They evaluate the Fourier coefficients of the generating functions
//!
//! `exp(i[γ sin θ + β sin 2θ])` and
//! `exp(i[γ1 sin φ1 + β1 sin 2φ1 + γ2 sin φ2 + β2 sin 2φ2 + α+ sin(φ1+φ2) + α− sin(φ1−φ2)])`
//!
//! with the periodic trapezoid rule, which converges geometrically for
//! these entire integrands. Nothing here touches the series code.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::TwoWaveArgs;
use crate::{Error, Result};

const IMAG_1D: f64 = 1e-12;
const IMAG_2D: f64 = 1e-10;
const MAX_NODES_1D: usize = 1 << 22;
const MAX_NODES_2D: usize = 1 << 14;

fn node_count(arg_sum: f64) -> usize {
    (64.0 * (1.0 + arg_sum)).ceil() as usize
}

fn check_imag(z: Complex64, threshold: f64) -> Result<f64> {
    if z.im.abs() > threshold || !z.re.is_finite() {
        return Err(Error::RepresentationMismatch { residual: z.im.abs(), threshold });
    }
    Ok(z.re)
}

fn trapezoid_1d(r: i64, gamma: f64, beta: f64, n: usize) -> Complex64 {
    let h = 2.0 * PI / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let t = k as f64 * h;
        let phase = gamma * t.sin() + beta * (2.0 * t).sin() - r as f64 * t;
        acc += Complex64::from_polar(1.0, phase);
    }
    acc / n as f64
}

/// `J_r(γ, β) = (1/2π) ∫ exp(i[γ sin θ + β sin 2θ − rθ]) dθ`.
pub fn oracle_gen_bessel(r: i64, gamma: f64, beta: f64) -> Result<f64> {
    let mut n = node_count(gamma.abs() + beta.abs());
    let mut prev = trapezoid_1d(r, gamma, beta, n);
    loop {
        n *= 2;
        let next = trapezoid_1d(r, gamma, beta, n);
        if (next - prev).norm() < 1e-14 || n >= MAX_NODES_1D {
            return check_imag(next, IMAG_1D);
        }
        prev = next;
    }
}

fn trapezoid_2d(r: i64, rp: i64, a: &TwoWaveArgs, n: usize) -> Complex64 {
    let h = 2.0 * PI / n as f64;
    let theta: Vec<f64> = (0..n).map(|k| k as f64 * h).collect();
    let wave = |gamma: f64, beta: f64, order: i64| -> Vec<Complex64> {
        theta
            .iter()
            .map(|&t| Complex64::from_polar(1.0, gamma * t.sin() + beta * (2.0 * t).sin() - order as f64 * t))
            .collect()
    };
    let e1 = wave(a.gamma1, a.beta1, r);
    let e2 = wave(a.gamma2, a.beta2, rp);
    // On the uniform grid φ1 ± φ2 lands on grid node (i ± j) mod n.
    let plus: Vec<Complex64> = theta.iter().map(|&t| Complex64::from_polar(1.0, a.alpha_plus * t.sin())).collect();
    let minus: Vec<Complex64> = theta.iter().map(|&t| Complex64::from_polar(1.0, a.alpha_minus * t.sin())).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &w1) in e1.iter().enumerate() {
        let mut row = Complex64::new(0.0, 0.0);
        for (j, &w2) in e2.iter().enumerate() {
            let s = (i + j) % n;
            let d = (i + n - j) % n;
            row += w2 * plus[s] * minus[d];
        }
        acc += w1 * row;
    }
    acc / (n as f64 * n as f64)
}

/// `I_rr' = (1/2π)² ∬ exp(i[f(φ1, φ2) − rφ1 − r'φ2]) dφ1 dφ2`.
pub fn oracle_two_wave_i(r: i64, rp: i64, args: TwoWaveArgs) -> Result<f64> {
    args.validate()?;
    let n = node_count(args.abs_sum());
    let coarse = trapezoid_2d(r, rp, &args, n);
    if n >= MAX_NODES_2D {
        return check_imag(coarse, IMAG_2D);
    }
    let fine = trapezoid_2d(r, rp, &args, n + n / 2);
    if (fine - coarse).norm() > 1e-11 {
        let finer = trapezoid_2d(r, rp, &args, 2 * n);
        return check_imag(finer, IMAG_2D);
    }
    check_imag(fine, IMAG_2D)
}
