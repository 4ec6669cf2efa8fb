//! Quantum multiphoton parameters and regime classification.
//!
//! All parameters are evaluated for the transition `p1 → p2` with `p1` the
//! initial and `p2` the final electron momentum (bare or laser-dressed).

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::mpbessel::TwoWaveArgs;
use crate::relkin::{cos_delta, mdot, FourVector, ScatteringKinematics, WaveConfig};
use crate::{Error, Result};

/// Factor standing in for "much less than".
pub const MUCH_LESS: f64 = 0.1;
/// Factor standing in for "much greater than".
pub const MUCH_GREATER: f64 = 10.0;
/// Smallest `max |α±|` for which the interference label is granted.
pub const ALPHA_NEGLIGIBLE: f64 = 1e-3;

fn checked_kp(k: FourVector, p: FourVector, what: &str) -> Result<f64> {
    let kp = mdot(k, p);
    if kp == 0.0 || !kp.is_finite() {
        return Err(Error::DegenerateKinematics(format!("{what} vanishes")));
    }
    Ok(kp)
}

/// Signed Bunkin–Fedorov parameter `m η (e·g)` with
/// `g = p2/(k p2) − p1/(k p1)` and a Minkowski product.
pub fn bf_gamma(p1: FourVector, p2: FourVector, wave: &WaveConfig, m: f64) -> Result<f64> {
    let k = wave.k();
    let kp1 = checked_kp(k, p1, "k·p1")?;
    let kp2 = checked_kp(k, p2, "k·p2")?;
    let e = wave.pol4();
    Ok(m * wave.eta * (mdot(e, p2) / kp2 - mdot(e, p1) / kp1))
}

/// Signed quadratic parameter `(1/8) η² m² [1/(k p2) − 1/(k p1)]`.
pub fn beta_param(p1: FourVector, p2: FourVector, wave: &WaveConfig, m: f64) -> Result<f64> {
    let k = wave.k();
    let kp1 = checked_kp(k, p1, "k·p1")?;
    let kp2 = checked_kp(k, p2, "k·p2")?;
    Ok(0.125 * wave.eta * wave.eta * m * m * (1.0 / kp2 - 1.0 / kp1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSign {
    Plus,
    Minus,
}

/// Signed interference parameter
/// `(η1 η2 m² cos Δ / 2) [1/(K p2) − 1/(K p1)]` with `K = k1 ± k2`.
pub fn alpha_pm(sign: AlphaSign, p1: FourVector, p2: FourVector, waves: &[WaveConfig; 2], m: f64) -> Result<f64> {
    let (k1, k2) = (waves[0].k(), waves[1].k());
    let kk = match sign {
        AlphaSign::Plus => k1 + k2,
        AlphaSign::Minus => {
            if waves[0].omega == waves[1].omega {
                return Err(Error::SingularCombination);
            }
            k1 - k2
        }
    };
    let kp1 = checked_kp(kk, p1, "(k1 ± k2)·p1")?;
    let kp2 = checked_kp(kk, p2, "(k1 ± k2)·p2")?;
    let pref = 0.5 * waves[0].eta * waves[1].eta * m * m * cos_delta(waves);
    Ok(pref * (1.0 / kp2 - 1.0 / kp1))
}

/// `β` of the single wave that two equal-frequency waves collapse into:
/// `(1/8) m² [1/(k1 p2) − 1/(k1 p1)] (η1² + η2² + 2 η1 η2 cos Δ)`.
pub fn combined_beta(p1: FourVector, p2: FourVector, waves: &[WaveConfig; 2], m: f64) -> Result<f64> {
    let k = waves[0].k();
    let kp1 = checked_kp(k, p1, "k1·p1")?;
    let kp2 = checked_kp(k, p2, "k1·p2")?;
    let (e1, e2) = (waves[0].eta, waves[1].eta);
    let eta_sq = e1 * e1 + e2 * e2 + 2.0 * e1 * e2 * cos_delta(waves);
    Ok(0.125 * m * m * (1.0 / kp2 - 1.0 / kp1) * eta_sq)
}

/// Classical field parameters of the initial and final states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalParams {
    /// `η_j m / |p_i|` for both waves.
    pub xi_i: [f64; 2],
    /// `η_j m / |p_f|` for both waves.
    pub xi_f: [f64; 2],
    /// `ξ1 ξ2 |p_i| / E_i`.
    pub zeta_i: f64,
    /// `ξ1 ξ2 |p_f| / E_f`.
    pub zeta_f: f64,
}

pub fn classical_params(kin: &ScatteringKinematics, waves: &[WaveConfig; 2], m: f64) -> Result<ClassicalParams> {
    let state = |p: FourVector, name: &str| -> Result<([f64; 2], f64)> {
        let pn = p.spatial_norm();
        if !(pn > 0.0) {
            return Err(Error::Domain(format!("{name} has zero spatial momentum")));
        }
        let xi = [waves[0].eta * m / pn, waves[1].eta * m / pn];
        Ok((xi, xi[0] * xi[1] * pn / p.t))
    };
    let (xi_i, zeta_i) = state(kin.p_i, "p_i")?;
    let (xi_f, zeta_f) = state(kin.p_f, "p_f")?;
    Ok(ClassicalParams { xi_i, xi_f, zeta_i, zeta_f })
}

/// Which electron momenta enter the quantum parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentumChoice {
    /// Laser-dressed quasimomenta.
    Quasi,
    /// Free momenta, as used in the moderate-field weights.
    Bare,
}

/// The six quantum and the classical multiphoton parameters of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MultiphotonParams {
    pub gamma1: f64,
    pub gamma2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    /// Larger of the initial- and final-state values.
    pub xi1: f64,
    /// Larger of the initial- and final-state values.
    pub xi2: f64,
    pub zeta_i: f64,
    pub zeta_f: f64,
}

impl MultiphotonParams {
    /// Parameters of a scattering event. For equal frequencies `α−` is set
    /// to zero: the difference combination does not exist.
    pub fn from_kinematics(
        kin: &ScatteringKinematics,
        waves: &[WaveConfig; 2],
        choice: MomentumChoice,
    ) -> Result<Self> {
        let m = kin.m;
        let (p1, p2) = match choice {
            MomentumChoice::Quasi => (kin.p_tilde_i, kin.p_tilde_f),
            MomentumChoice::Bare => (kin.p_i, kin.p_f),
        };
        let alpha_minus =
            if waves[0].omega == waves[1].omega { 0.0 } else { alpha_pm(AlphaSign::Minus, p1, p2, waves, m)? };
        let c = classical_params(kin, waves, m)?;
        let out = Self {
            gamma1: bf_gamma(p1, p2, &waves[0], m)?,
            gamma2: bf_gamma(p1, p2, &waves[1], m)?,
            beta1: beta_param(p1, p2, &waves[0], m)?,
            beta2: beta_param(p1, p2, &waves[1], m)?,
            alpha_plus: alpha_pm(AlphaSign::Plus, p1, p2, waves, m)?,
            alpha_minus,
            xi1: c.xi_i[0].max(c.xi_f[0]),
            xi2: c.xi_i[1].max(c.xi_f[1]),
            zeta_i: c.zeta_i,
            zeta_f: c.zeta_f,
        };
        out.validate()?;
        Ok(out)
    }

    /// Parameters given directly by their quantum values; the classical
    /// parameters are left at zero.
    pub fn from_args(args: TwoWaveArgs) -> Self {
        Self {
            gamma1: args.gamma1,
            gamma2: args.gamma2,
            beta1: args.beta1,
            beta2: args.beta2,
            alpha_plus: args.alpha_plus,
            alpha_minus: args.alpha_minus,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.gamma1,
            self.gamma2,
            self.beta1,
            self.beta2,
            self.alpha_plus,
            self.alpha_minus,
            self.xi1,
            self.xi2,
            self.zeta_i,
            self.zeta_f,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite multiphoton parameter in {self:?}")));
        }
        if self.xi1 < 0.0 || self.xi2 < 0.0 || self.zeta_i < 0.0 || self.zeta_f < 0.0 {
            return Err(Error::Domain("classical parameters must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn two_wave_args(&self) -> TwoWaveArgs {
        TwoWaveArgs::new(self.gamma1, self.beta1, self.gamma2, self.beta2, self.alpha_plus, self.alpha_minus)
    }

    /// Arguments of the two-wave functions with the Bunkin–Fedorov
    /// parameters dropped.
    pub fn interference_args(&self) -> TwoWaveArgs {
        TwoWaveArgs::interference(self.beta1, self.beta2, self.alpha_plus, self.alpha_minus)
    }
}

/// Order-of-magnitude estimates next to the exact parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderEstimate {
    /// `η_j m v_i / ω_j`.
    pub gamma_est: [f64; 2],
    /// `γ_est_j ξ_j`.
    pub beta_est: [f64; 2],
    /// `max(γ_est_1 ξ2, γ_est_2 ξ1)`.
    pub alpha_est: f64,
    pub gamma_exact: [f64; 2],
    pub beta_exact: [f64; 2],
    pub alpha_exact: f64,
    /// `|exact| / estimate`, or `None` when the estimate vanishes.
    pub gamma_ratio: [Option<f64>; 2],
    pub beta_ratio: [Option<f64>; 2],
    pub alpha_ratio: Option<f64>,
    /// Some `|γ_j|` is below a thousandth of its nonzero estimate: the
    /// geometry suppresses the Bunkin–Fedorov parameters.
    pub geometry_suppressed: bool,
}

pub fn estimate_orders(
    params: &MultiphotonParams,
    kin: &ScatteringKinematics,
    waves: &[WaveConfig; 2],
) -> OrderEstimate {
    let v = kin.v_i();
    let g_est = [0, 1].map(|j| waves[j].eta * kin.m * v / waves[j].omega);
    let b_est = [g_est[0] * params.xi1, g_est[1] * params.xi2];
    let a_est = (g_est[0] * params.xi2).max(g_est[1] * params.xi1);
    let g_ex = [params.gamma1.abs(), params.gamma2.abs()];
    let b_ex = [params.beta1.abs(), params.beta2.abs()];
    let a_ex = params.alpha_plus.abs().max(params.alpha_minus.abs());
    let ratio = |ex: f64, est: f64| if est > 0.0 { Some(ex / est) } else { None };
    OrderEstimate {
        gamma_est: g_est,
        beta_est: b_est,
        alpha_est: a_est,
        gamma_exact: g_ex,
        beta_exact: b_ex,
        alpha_exact: a_ex,
        gamma_ratio: [ratio(g_ex[0], g_est[0]), ratio(g_ex[1], g_est[1])],
        beta_ratio: [ratio(b_ex[0], b_est[0]), ratio(b_ex[1], b_est[1])],
        alpha_ratio: ratio(a_ex, a_est),
        geometry_suppressed: (0..2).any(|j| g_est[j] > 0.0 && g_ex[j] < 1e-3 * g_est[j]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KinematicClass {
    Interference,
    Noninterference,
    Intermediate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldRegime {
    ModerateNoninterference,
    DipoleLike,
    ModerateInterference,
    Strong,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrequencyStatus {
    CollapsesToSingleWave,
    WellSeparated,
}

/// How a diagnostic row compares its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `left ≤ right`
    AtMost,
    /// `left ≥ right`
    AtLeast,
    /// `left > right`
    Above,
    /// `left / right ∈ [MUCH_LESS, MUCH_GREATER]`
    Comparable,
}

/// One evaluated inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub label: String,
    pub left: f64,
    pub right: f64,
    pub relation: Relation,
    pub satisfied: bool,
}

impl Diagnostic {
    fn new(label: impl Into<String>, left: f64, relation: Relation, right: f64) -> Self {
        let satisfied = match relation {
            Relation::AtMost => left <= right,
            Relation::AtLeast => left >= right,
            Relation::Above => left > right,
            Relation::Comparable => left >= MUCH_LESS * right && left <= MUCH_GREATER * right,
        };
        Self { label: label.into(), left, right, relation, satisfied }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub kinematic: KinematicClass,
    pub field_regime: FieldRegime,
    pub frequency_status: FrequencyStatus,
    /// Labels of the rows that decided each of the three classifications.
    pub basis: RegimeBasis,
    pub diagnostics: Vec<Diagnostic>,
    /// Parameters with laser-dressed momenta.
    pub params_quasi: MultiphotonParams,
    /// Parameters with free momenta.
    pub params_bare: MultiphotonParams,
    pub estimate: OrderEstimate,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RegimeBasis {
    pub kinematic: Vec<String>,
    pub field_regime: Vec<String>,
    pub frequency_status: Vec<String>,
}

impl RegimeReport {
    pub fn row(&self, label: &str) -> Option<&Diagnostic> {
        self.diagnostics.iter().find(|d| d.label == label)
    }

    /// All rows whose label starts with `prefix`.
    pub fn rows<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Diagnostic> + 'a {
        self.diagnostics.iter().filter(move |d| d.label.starts_with(prefix))
    }
}

/// `ω_j E² / (m² |p|)`: the common form of the three bounds on `η²` that
/// make the quadratic and interference parameters negligible.
fn dipole_bound(omega: f64, p: FourVector, m: f64) -> f64 {
    omega * p.t * p.t / (m * m * p.spatial_norm())
}

struct Rows(Vec<Diagnostic>);

impl Rows {
    fn push(&mut self, label: impl Into<String>, left: f64, relation: Relation, right: f64) {
        self.0.push(Diagnostic::new(label, left, relation, right));
    }

    fn all(&self, prefix: &str) -> (bool, Vec<String>) {
        let hits: Vec<&Diagnostic> = self.0.iter().filter(|d| d.label.starts_with(prefix)).collect();
        (!hits.is_empty() && hits.iter().all(|d| d.satisfied), hits.iter().map(|d| d.label.clone()).collect())
    }

    fn satisfied(&self, label: &str) -> bool {
        self.0.iter().any(|d| d.label == label && d.satisfied)
    }
}

/// Evaluates every regime inequality and classifies the scenario.
pub fn classify_regime(kin: &ScatteringKinematics, waves: &[WaveConfig; 2], m: f64) -> Result<RegimeReport> {
    let params_quasi = MultiphotonParams::from_kinematics(kin, waves, MomentumChoice::Quasi)?;
    let params_bare = MultiphotonParams::from_kinematics(kin, waves, MomentumChoice::Bare)?;
    let estimate = estimate_orders(&params_quasi, kin, waves);
    let (w1, w2) = (waves[0].omega, waves[1].omega);
    let (eta1, eta2) = (waves[0].eta, waves[1].eta);
    let mut rows = Rows(Vec::new());
    let mut basis = RegimeBasis::default();
    let states = [("i", kin.p_i), ("f", kin.p_f)];

    // Frequencies.
    let dw = (w1 - w2).abs() / w1;
    rows.push("close frequencies: |dw|/w1 << 1", dw, Relation::AtMost, MUCH_LESS);
    rows.push("separated frequencies: |dw|/w1 not << 1", dw, Relation::Above, MUCH_LESS);
    rows.push("wide separation: |dw|/w1 >= 1", dw, Relation::AtLeast, 1.0);
    rows.push("frequency bounds: w1 > w2", w1, Relation::Above, w2);
    let kinetic = kin.p_i.t - m;
    for (j, w) in [w1, w2].into_iter().enumerate() {
        rows.push(format!("frequency bounds: w{} <= min(m, T_i)", j + 1), w, Relation::AtMost, m.min(kinetic));
    }
    let frequency_status = if rows.satisfied("close frequencies: |dw|/w1 << 1") {
        basis.frequency_status.push("close frequencies: |dw|/w1 << 1".into());
        FrequencyStatus::CollapsesToSingleWave
    } else {
        basis.frequency_status.push("separated frequencies: |dw|/w1 not << 1".into());
        FrequencyStatus::WellSeparated
    };

    // Kinematic range.
    let scale = [0, 1]
        .iter()
        .map(|&j| if waves[j].eta > 0.0 { waves[j].omega / (m * kin.v_i() * waves[j].eta) } else { f64::INFINITY })
        .fold(f64::INFINITY, f64::min);
    rows.push("interference geometry: scale <= 1", scale, Relation::AtMost, 1.0);
    let alpha_max = params_quasi.alpha_plus.abs().max(params_quasi.alpha_minus.abs());
    rows.push("interference geometry: alpha not negligible", alpha_max, Relation::Above, ALPHA_NEGLIGIBLE);
    let mut deviations = Vec::new();
    for (name, angle) in [("phi", kin.phi), ("psi", kin.psi)] {
        match angle {
            Some(a) => {
                let dev = (a - FRAC_PI_2).abs();
                rows.push(
                    format!("interference geometry: |{name} - pi/2| << scale"),
                    dev,
                    Relation::AtMost,
                    MUCH_LESS * scale,
                );
                rows.push(
                    format!("noninterference geometry: |{name} - pi/2| >> scale"),
                    dev,
                    Relation::AtLeast,
                    MUCH_GREATER * scale,
                );
                deviations.push(dev);
            }
            None => rows.push(format!("plane for {name} defined"), 0.0, Relation::Above, 0.0),
        }
    }
    let kinematic = if deviations.len() < 2 {
        basis.kinematic.extend(rows.0.iter().filter(|d| d.label.starts_with("plane")).map(|d| d.label.clone()));
        KinematicClass::Intermediate
    } else {
        let (interf, labels_int) = rows.all("interference geometry: |");
        let labels_non: Vec<String> = rows
            .0
            .iter()
            .filter(|d| d.label.starts_with("noninterference geometry:"))
            .map(|d| d.label.clone())
            .collect();
        if interf && rows.satisfied("interference geometry: alpha not negligible") {
            basis.kinematic.extend(labels_int);
            basis.kinematic.push("interference geometry: alpha not negligible".into());
            KinematicClass::Interference
        } else if let Some(hit) = labels_non.iter().find(|l| rows.satisfied(l)) {
            basis.kinematic.push(hit.clone());
            KinematicClass::Noninterference
        } else {
            basis.kinematic.extend(labels_int);
            basis.kinematic.extend(labels_non);
            KinematicClass::Intermediate
        }
    };

    // Field strengths.
    for (s, p) in states {
        let pn = p.spatial_norm();
        for (j, eta) in [eta1, eta2].into_iter().enumerate() {
            rows.push(format!("moderate field: eta{} << |p_{s}|/m", j + 1), eta, Relation::AtMost, MUCH_LESS * pn / m);
        }
        for (j, (eta, w)) in [(eta1, w1), (eta2, w2)].into_iter().enumerate() {
            let b = dipole_bound(w, p, m);
            rows.push(
                format!("dipole-like field: eta{0}^2 << w{0} E_{s}^2/(m^2 |p_{s}|)", j + 1),
                eta * eta,
                Relation::AtMost,
                MUCH_LESS * b,
            );
            rows.push(
                format!("strong field: eta{0}^2 ~ w{0} E_{s}^2/(m^2 |p_{s}|)", j + 1),
                eta * eta,
                Relation::Comparable,
                b,
            );
        }
        let bmin = dipole_bound(w1.min(w2), p, m);
        rows.push(
            format!("dipole-like field: eta1 eta2 << w E_{s}^2/(m^2 |p_{s}|)"),
            eta1 * eta2,
            Relation::AtMost,
            MUCH_LESS * bmin,
        );
        rows.push(
            format!("moderate interference field: eta1 eta2 << |p_{s}| E_{s}/m^2"),
            eta1 * eta2,
            Relation::AtMost,
            MUCH_LESS * pn * p.t / (m * m),
        );
    }
    let (dipole, l_dipole) = rows.all("dipole-like field:");
    let (strong, l_strong) = rows.all("strong field:");
    let (mod_int, l_mod_int) = rows.all("moderate interference field:");
    let (mod_non, l_mod_non) = rows.all("moderate field:");
    let field_regime = if dipole {
        basis.field_regime = l_dipole;
        FieldRegime::DipoleLike
    } else if strong {
        basis.field_regime = l_strong;
        FieldRegime::Strong
    } else if mod_int && kinematic == KinematicClass::Interference {
        basis.field_regime = l_mod_int;
        FieldRegime::ModerateInterference
    } else if mod_non {
        basis.field_regime = l_mod_non;
        FieldRegime::ModerateNoninterference
    } else if mod_int {
        basis.field_regime = l_mod_int;
        FieldRegime::ModerateInterference
    } else {
        basis.field_regime = [l_mod_non, l_mod_int].concat();
        FieldRegime::Outside
    };

    Ok(RegimeReport {
        kinematic,
        field_regime,
        frequency_status,
        basis,
        diagnostics: rows.0,
        params_quasi,
        params_bare,
        estimate,
    })
}
