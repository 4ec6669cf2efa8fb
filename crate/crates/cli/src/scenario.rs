//! Scenario files: a TOML description of the two waves, the electron, the
//! emitted photon and evaluation options. Energies are given in eV and
//! converted to units of the electron rest energy on validation.
//!
//! ```toml
//! [wave1]
//! omega_ev = 20.0
//! eta = 0.002            # or field_v_per_m = 1.0e10
//! pol = [1.0, 0.0]
//!
//! [wave2]
//! omega_ev = 12.0
//! eta = 0.002
//! pol = [1.0, 0.0]
//!
//! [electron]
//! kinetic_ev = 50000.0
//! direction = [0.0, 0.0, 1.0]
//! final_direction = [0.0, 0.6, 0.8]   # or final_momentum_ev = [px, py, pz]
//! z = 1
//!
//! [photon]
//! omega_ev = 500.0
//! direction = [0.0, -1.0, 0.3]
//!
//! [options]
//! tol = 1e-12
//! tail_tol = 1e-10
//! mode = "auto"
//! ```

use std::path::Path;

use lab2w::relkin::{FourVector, ScatteringKinematics, WaveConfig, POL_NORM_TOL};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Electron rest energy in eV.
pub const ELECTRON_REST_EV: f64 = 510_998.95;
/// `ħc` in eV·m.
pub const HBAR_C_EV_M: f64 = 1.973_269_804e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeSpec {
    #[default]
    Auto,
    Noninterference,
    Factorized,
    Interference,
    SingleWaveEven,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveSpec {
    pub omega_ev: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_v_per_m: Option<f64>,
    pub pol: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectronSpec {
    pub kinetic_ev: f64,
    pub direction: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_direction: Option<[f64; 3]>,
    /// Defaults to the initial kinetic energy minus the photon energy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_kinetic_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_momentum_ev: Option<[f64; 3]>,
    pub z: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhotonSpec {
    pub omega_ev: f64,
    pub direction: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptionsSpec {
    pub tol: f64,
    pub tail_tol: f64,
    pub mode: ModeSpec,
}

impl Default for OptionsSpec {
    fn default() -> Self {
        Self { tol: 1e-12, tail_tol: 1e-10, mode: ModeSpec::Auto }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub wave1: WaveSpec,
    pub wave2: WaveSpec,
    pub electron: ElectronSpec,
    pub photon: PhotonSpec,
    #[serde(default)]
    pub options: OptionsSpec,
}

/// A scenario in internal units (`ħ = c = m = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Physics {
    pub waves: [WaveConfig; 2],
    pub kin: ScatteringKinematics,
    pub z: u32,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("{name} must be positive, got {v}")))
    }
}

fn unit_direction(name: &str, d: [f64; 3]) -> CliResult<[f64; 3]> {
    let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if n > 0.0 && n.is_finite() {
        Ok(d)
    } else {
        Err(invalid(format!("{name} must be a nonzero finite vector, got {d:?}")))
    }
}

impl WaveSpec {
    fn to_config(&self, name: &str) -> CliResult<WaveConfig> {
        let omega_ev = positive(&format!("{name}.omega_ev"), self.omega_ev)?;
        let eta = match (self.eta, self.field_v_per_m) {
            (Some(eta), None) => eta,
            (None, Some(f)) => f * HBAR_C_EV_M / (ELECTRON_REST_EV * omega_ev),
            _ => return Err(invalid(format!("{name}: give exactly one of eta and field_v_per_m"))),
        };
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(invalid(format!("{name}: intensity parameter must be nonnegative, got {eta}")));
        }
        let n = self.pol[0].hypot(self.pol[1]);
        if (n - 1.0).abs() > POL_NORM_TOL {
            return Err(invalid(format!("{name}.pol = {:?} has norm {n}, expected a unit vector", self.pol)));
        }
        WaveConfig::new(omega_ev / ELECTRON_REST_EV, eta, self.pol).map_err(|e| invalid(format!("{name}: {e}")))
    }
}

impl Scenario {
    pub fn from_toml(text: &str, path: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Parse { path: path.into(), message: e.to_string() })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario is always representable as TOML")
    }

    /// Checks every physical invariant and converts to internal units.
    pub fn physics(&self) -> CliResult<Physics> {
        let w1 = self.wave1.to_config("wave1")?;
        let w2 = self.wave2.to_config("wave2")?;
        if w2.omega > w1.omega {
            return Err(invalid(format!(
                "wave2.omega_ev = {} exceeds wave1.omega_ev = {}: waves are ordered with omega1 > omega2",
                self.wave2.omega_ev, self.wave1.omega_ev
            )));
        }
        let waves = [w1, w2];
        let e = &self.electron;
        let t_i = positive("electron.kinetic_ev", e.kinetic_ev)? / ELECTRON_REST_EV;
        let k = positive("photon.omega_ev", self.photon.omega_ev)? / ELECTRON_REST_EV;
        let p_i = FourVector::on_shell(1.0, 1.0 + t_i, unit_direction("electron.direction", e.direction)?)
            .map_err(|err| invalid(format!("electron.direction: {err}")))?;
        let p_f = match (e.final_direction, e.final_momentum_ev) {
            (Some(dir), None) => {
                let t_f = match e.final_kinetic_ev {
                    Some(t) => positive("electron.final_kinetic_ev", t)? / ELECTRON_REST_EV,
                    None => t_i - k,
                };
                if !(t_f > 0.0) {
                    return Err(invalid(format!(
                        "photon.omega_ev = {} leaves no kinetic energy for the final electron",
                        self.photon.omega_ev
                    )));
                }
                FourVector::on_shell(1.0, 1.0 + t_f, unit_direction("electron.final_direction", dir)?)
                    .map_err(|err| invalid(format!("electron.final_direction: {err}")))?
            }
            (None, Some(p)) => {
                if e.final_kinetic_ev.is_some() {
                    return Err(invalid("electron.final_kinetic_ev conflicts with electron.final_momentum_ev"));
                }
                let p = p.map(|c| c / ELECTRON_REST_EV);
                if p.iter().any(|c| !c.is_finite()) {
                    return Err(invalid("electron.final_momentum_ev must be finite"));
                }
                let energy = (1.0 + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                FourVector::new(energy, p[0], p[1], p[2])
            }
            _ => return Err(invalid("electron: give exactly one of final_direction and final_momentum_ev")),
        };
        let k_prime = FourVector::photon(k, unit_direction("photon.direction", self.photon.direction)?)
            .map_err(|err| invalid(format!("photon.direction: {err}")))?;
        let kin = ScatteringKinematics::new(1.0, p_i, p_f, k_prime, &waves).map_err(|err| invalid(err.to_string()))?;
        if !(self.options.tol > 0.0) || !(self.options.tail_tol > 0.0 && self.options.tail_tol < 0.1) {
            return Err(invalid(format!(
                "options: tol must be positive and tail_tol in (0, 0.1), got {} and {}",
                self.options.tol, self.options.tail_tol
            )));
        }
        Ok(Physics { waves, kin, z: e.z })
    }
}

/// Reads, parses and validates a scenario file.
pub fn load_scenario(path: &Path) -> CliResult<Scenario> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: name.clone(), source })?;
    let s = Scenario::from_toml(&text, &name)?;
    s.physics()?;
    Ok(s)
}
