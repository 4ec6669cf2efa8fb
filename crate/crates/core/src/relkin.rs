//! Four-vector algebra and laser-dressed electron kinematics.
//!
//! Both light waves propagate along +z, so every wave four-momentum has the
//! form `k_j = ω_j (1, 0, 0, 1)` and every polarization four-vector
//! `e_j = (0, e_jx, e_jy, 0)`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative tolerance for on-shell checks of electron momenta.
pub const ON_SHELL_RTOL: f64 = 1e-8;

/// Tolerance for unit polarization vectors.
pub const POL_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const ZERO: FourVector = FourVector { t: 0.0, x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    /// Photon four-momentum `ω (1, 0, 0, 1)` of a wave travelling along +z.
    pub const fn lightlike_z(omega: f64) -> Self {
        Self::new(omega, 0.0, 0.0, omega)
    }

    /// On-shell momentum of a particle of mass `m` and total energy `energy`
    /// moving along `direction` (normalized internally).
    pub fn on_shell(m: f64, energy: f64, direction: [f64; 3]) -> Result<Self> {
        if energy < m {
            return Err(Error::Domain(format!("energy {energy} is below the mass {m}")));
        }
        let n = unit3(direction)?;
        let p = ((energy - m) * (energy + m)).sqrt();
        Ok(Self::new(energy, p * n[0], p * n[1], p * n[2]))
    }

    /// Massless four-momentum `ω (1, n)`.
    pub fn photon(omega: f64, direction: [f64; 3]) -> Result<Self> {
        let n = unit3(direction)?;
        Ok(Self::new(omega, omega * n[0], omega * n[1], omega * n[2]))
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn spatial_norm(&self) -> f64 {
        norm3(self.spatial())
    }

    /// Minkowski square under the (+,−,−,−) metric.
    pub fn square(&self) -> f64 {
        mdot(*self, *self)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector::new(-self.t, -self.x, -self.y, -self.z)
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector::new(self * v.t, self * v.x, self * v.y, self * v.z)
    }
}

/// Minkowski product `a·b = a_t b_t − a·b (spatial)`.
pub fn mdot(a: FourVector, b: FourVector) -> f64 {
    a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn unit3(a: [f64; 3]) -> Result<[f64; 3]> {
    let n = norm3(a);
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::Domain(format!("direction {a:?} has no finite nonzero length")));
    }
    Ok([a[0] / n, a[1] / n, a[2] / n])
}

/// One linearly polarized plane wave travelling along +z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveConfig {
    /// Frequency in units of the electron mass.
    pub omega: f64,
    /// Dimensionless intensity parameter `e F / (m ω)`.
    pub eta: f64,
    /// Unit polarization direction in the xy-plane.
    pub pol: [f64; 2],
}

impl WaveConfig {
    pub fn new(omega: f64, eta: f64, pol: [f64; 2]) -> Result<Self> {
        let w = Self { omega, eta, pol };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::Domain(format!("wave frequency must be positive, got {}", self.omega)));
        }
        if !(self.eta >= 0.0) || !self.eta.is_finite() {
            return Err(Error::Domain(format!("intensity parameter must be nonnegative, got {}", self.eta)));
        }
        let n = self.pol[0].hypot(self.pol[1]);
        if (n - 1.0).abs() > POL_NORM_TOL {
            return Err(Error::Domain(format!("polarization {:?} has norm {n}, expected 1", self.pol)));
        }
        Ok(())
    }

    /// Wave four-momentum `k_j`.
    pub fn k(&self) -> FourVector {
        FourVector::lightlike_z(self.omega)
    }

    /// Polarization four-vector `e_j = (0, e_j, 0)`.
    pub fn pol4(&self) -> FourVector {
        FourVector::new(0.0, self.pol[0], self.pol[1], 0.0)
    }

    /// Same wave with the field switched off.
    pub fn switched_off(&self) -> Self {
        Self { eta: 0.0, ..*self }
    }
}

/// `cos Δ` for the angle between the two polarization vectors.
pub fn cos_delta(waves: &[WaveConfig; 2]) -> f64 {
    (waves[0].pol[0] * waves[1].pol[0] + waves[0].pol[1] * waves[1].pol[1]).clamp(-1.0, 1.0)
}

/// Intensity parameter `η = e F / (m ω)`.
pub fn intensity_param(field_strength: f64, omega: f64, m: f64, e_charge: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    if !(m > 0.0) {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    Ok(e_charge * field_strength / (m * omega))
}

/// Field-dressed mass `m √(1 + η1²/2 + η2²/2)`.
pub fn effective_mass(m: f64, eta1: f64, eta2: f64) -> f64 {
    m * (1.0 + 0.5 * eta1 * eta1 + 0.5 * eta2 * eta2).sqrt()
}

/// Quasimomentum `p + m²(η1² + η2²) / (4 k1·p) k1`.
pub fn quasimomentum(p: FourVector, k1: FourVector, eta1: f64, eta2: f64, m: f64) -> Result<FourVector> {
    let kp = mdot(k1, p);
    if kp == 0.0 {
        return Err(Error::DegenerateKinematics("k1·p vanishes".into()));
    }
    let c = m * m * (eta1 * eta1 + eta2 * eta2) / (4.0 * kp);
    Ok(p + c * k1)
}

fn check_on_shell(name: &str, p: FourVector, m: f64) -> Result<()> {
    let sq = p.square();
    if ((sq - m * m) / (m * m)).abs() > ON_SHELL_RTOL || !(p.t > 0.0) {
        return Err(Error::OffShell(format!("{name}: p² = {sq:e}, expected m² = {:e}", m * m)));
    }
    Ok(())
}

/// Electron and spontaneous-photon momenta of one scattering event together
/// with the laser-dressed quantities derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringKinematics {
    pub m: f64,
    pub p_i: FourVector,
    pub p_f: FourVector,
    pub k_prime: FourVector,
    pub p_tilde_i: FourVector,
    pub p_tilde_f: FourVector,
    pub m_star: f64,
    /// Angle between the (p_i, p_f) plane and the first polarization vector.
    pub phi: Option<f64>,
    /// Angle between the (p_i, k') plane and the first polarization vector.
    pub psi: Option<f64>,
}

impl ScatteringKinematics {
    /// Validates the bare momenta and derives quasimomenta, effective mass
    /// and plane angles (measured from wave 1's polarization). Angles are
    /// `None` when the corresponding plane is undefined.
    pub fn new(m: f64, p_i: FourVector, p_f: FourVector, k_prime: FourVector, waves: &[WaveConfig; 2]) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {m}")));
        }
        for w in waves {
            w.validate()?;
        }
        check_on_shell("p_i", p_i, m)?;
        check_on_shell("p_f", p_f, m)?;
        let k2 = k_prime.square();
        if k2.abs() > 1e-12 * k_prime.t.powi(2).max(1.0) || !(k_prime.t > 0.0) {
            return Err(Error::OffShell(format!("k': k'² = {k2:e}, expected a positive-energy lightlike vector")));
        }
        let (eta1, eta2) = (waves[0].eta, waves[1].eta);
        let k1 = waves[0].k();
        let p_tilde_i = quasimomentum(p_i, k1, eta1, eta2, m)?;
        let p_tilde_f = quasimomentum(p_f, k1, eta1, eta2, m)?;
        let mut kin = Self {
            m,
            p_i,
            p_f,
            k_prime,
            p_tilde_i,
            p_tilde_f,
            m_star: effective_mass(m, eta1, eta2),
            phi: None,
            psi: None,
        };
        kin.phi = plane_angle(p_i.spatial(), p_f.spatial(), waves[0].pol, "(p_i, p_f)").ok();
        kin.psi = plane_angle(p_i.spatial(), k_prime.spatial(), waves[0].pol, "(p_i, k')").ok();
        Ok(kin)
    }

    pub fn v_i(&self) -> f64 {
        self.p_i.spatial_norm() / self.p_i.t
    }

    pub fn v_f(&self) -> f64 {
        self.p_f.spatial_norm() / self.p_f.t
    }
}

/// Angle in `[0, π/2]` between the in-plane unit vector `e` and the plane
/// spanned by `a` and `b`.
fn plane_angle(a: [f64; 3], b: [f64; 3], e: [f64; 2], name: &'static str) -> Result<f64> {
    let n = cross3(a, b);
    let nn = norm3(n);
    if !(nn > 1e-12 * norm3(a) * norm3(b)) {
        return Err(Error::UndefinedPlane(name));
    }
    let en = e[0].hypot(e[1]);
    let sin_angle = ((e[0] * n[0] + e[1] * n[1]) / (nn * en)).abs().min(1.0);
    let cos_angle = (1.0 - sin_angle * sin_angle).max(0.0).sqrt();
    Ok(sin_angle.atan2(cos_angle))
}

/// Plane angles `(φ, ψ)` of the scattering configuration measured from the
/// in-plane direction `e_x`.
pub fn geometry_angles(kin: &ScatteringKinematics, e_x: [f64; 2]) -> Result<(f64, f64)> {
    let pi = kin.p_i.spatial();
    let phi = plane_angle(pi, kin.p_f.spatial(), e_x, "(p_i, p_f)")?;
    let psi = plane_angle(pi, kin.k_prime.spatial(), e_x, "(p_i, k')")?;
    Ok((phi, psi))
}

/// Which set of momentum-transfer formulas to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BookkeepingMode {
    /// Full dressed kinematics with `l` photons of wave 1 and `s` of wave 2.
    General,
    /// Moderate fields: bare momenta, photon exchange negligible.
    Moderate,
    /// Interference range, integer number of combination photons `(l1, l2)`.
    InterferenceInteger,
    /// Interference range, half-integer number of combination photons.
    InterferenceHalf,
}

/// Transferred four-momentum and the intermediate electron four-momenta of
/// the forward (`q_i`) and exchange (`q_f`) diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumTransfer {
    pub q: FourVector,
    pub q_i: FourVector,
    pub q_f: FourVector,
}

/// Momentum bookkeeping for one photon-number cell. The intermediate momenta
/// are evaluated with the same indices as the transfer (`l' = l`, `s' = s`,
/// or `s1 = l1`, `s2 = l2` in the interference modes).
pub fn momenta_bookkeeping(
    kin: &ScatteringKinematics,
    waves: &[WaveConfig; 2],
    l: i64,
    s: i64,
    mode: BookkeepingMode,
) -> MomentumTransfer {
    let k1 = waves[0].k();
    let k2 = waves[1].k();
    let kp = kin.k_prime;
    let (pi, pf) = (kin.p_tilde_i, kin.p_tilde_f);
    match mode {
        BookkeepingMode::Moderate => {
            MomentumTransfer { q: kin.p_f - kin.p_i + kp, q_i: kin.p_i - kp, q_f: kin.p_f + kp }
        }
        BookkeepingMode::General => {
            let exch = (l as f64) * k1 + (s as f64) * k2;
            MomentumTransfer { q: pf - pi + kp + exch, q_i: pi - kp - exch, q_f: pf + kp + exch }
        }
        BookkeepingMode::InterferenceInteger | BookkeepingMode::InterferenceHalf => {
            let shift = if mode == BookkeepingMode::InterferenceHalf { 0.5 } else { 0.0 };
            let (c1, c2) = (l as f64 - shift, s as f64 - shift);
            let exch = c1 * (k1 + k2) + c2 * (k1 - k2);
            MomentumTransfer { q: pf - pi - kp + exch, q_i: pi - kp - exch, q_f: pf + kp + exch }
        }
    }
}
