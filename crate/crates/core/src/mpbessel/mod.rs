//! Bessel-type special functions of multiphoton exchange with one and two
//! light waves, the scalar and vector coefficient functions built from them,
//! and independent quadrature oracles used to check the series.

mod bessel;
mod coeffs;
pub mod oracle;
mod series;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use bessel::{bessel_int, order_window, tail_bound, BesselTable, SERIES_MAX_ARG};
pub use coeffs::{coeff_b, coeff_d, coeff_interference, CoeffKind, CoeffValue};
pub use oracle::{oracle_gen_bessel, oracle_two_wave_i};
pub use series::{
    gen_bessel, gen_bessel_bounded, interference_j, interference_j_bounded, two_wave_i, two_wave_i_bounded, Bounded,
    GenBessel, InterferenceEvaluator, TwoWaveEvaluator,
};

/// Requested accuracy of a series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Absolute accuracy of a single function value.
    pub eps: f64,
    /// Hard cap on the half-width of any truncated index window.
    pub max_terms: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps: 1e-12, max_terms: 1 << 16 }
    }
}

impl Tolerance {
    pub fn new(eps: f64, max_terms: usize) -> Result<Self> {
        let tol = Self { eps, max_terms };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(Error::Domain(format!("tolerance eps must be positive, got {}", self.eps)));
        }
        if self.max_terms < 16 {
            return Err(Error::Domain(format!("max_terms must be at least 16, got {}", self.max_terms)));
        }
        Ok(())
    }
}

/// Signed arguments `(γ1, β1; γ2, β2; α+, α−)` of the two-wave functions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TwoWaveArgs {
    pub gamma1: f64,
    pub beta1: f64,
    pub gamma2: f64,
    pub beta2: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
}

impl TwoWaveArgs {
    pub fn new(gamma1: f64, beta1: f64, gamma2: f64, beta2: f64, alpha_plus: f64, alpha_minus: f64) -> Self {
        Self { gamma1, beta1, gamma2, beta2, alpha_plus, alpha_minus }
    }

    /// Interference-range arguments (`γ1 = γ2 = 0`).
    pub fn interference(beta1: f64, beta2: f64, alpha_plus: f64, alpha_minus: f64) -> Self {
        Self::new(0.0, beta1, 0.0, beta2, alpha_plus, alpha_minus)
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.gamma1, self.beta1, self.gamma2, self.beta2, self.alpha_plus, self.alpha_minus]
    }

    pub fn max_abs(&self) -> f64 {
        self.as_array().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn abs_sum(&self) -> f64 {
        self.as_array().iter().map(|v| v.abs()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.as_array().iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Domain(format!("non-finite two-wave arguments {self:?}")))
        }
    }
}
