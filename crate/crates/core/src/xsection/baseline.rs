//! Field-free electron–nucleus bremsstrahlung cross section.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::relkin::{FourVector, ScatteringKinematics};
use crate::{Error, Result};

/// Fine-structure constant.
pub const ALPHA_FS: f64 = 7.297_352_569_3e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineKind {
    /// Constant 1: spectra are reported as bare weights.
    Unit,
    /// Born-approximation bremsstrahlung off an unscreened point nucleus.
    BetheHeitler,
}

/// Field-free cross section `dσ*` for the bare momenta of `kin`.
///
/// The Bethe–Heitler value is the triply differential
/// `dσ / (dω' dΩ_k' dΩ_pf)` in natural units (`ħ = c = 1`, lengths in
/// `1/m`), for an unscreened nucleus of charge `z`.
pub fn baseline_dcs(kind: BaselineKind, kin: &ScatteringKinematics, z: u32) -> Result<f64> {
    match kind {
        BaselineKind::Unit => Ok(1.0),
        BaselineKind::BetheHeitler => bethe_heitler(kin, z),
    }
}

fn scaled(p: FourVector, m: f64) -> (f64, [f64; 3]) {
    let s = p.spatial();
    (p.t / m, [s[0] / m, s[1] / m, s[2] / m])
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn bethe_heitler(kin: &ScatteringKinematics, z: u32) -> Result<f64> {
    let m = kin.m;
    let k = kin.k_prime.t / m;
    let (e0, p0) = scaled(kin.p_i, m);
    let (e, p) = scaled(kin.p_f, m);
    if k >= e0 - 1.0 {
        return Err(Error::Forbidden(format!("photon energy {k} m is not below the kinetic energy {} m", e0 - 1.0)));
    }
    let born = f64::from(z) * ALPHA_FS;
    for (name, v) in [("initial", kin.v_i()), ("final", kin.v_f())] {
        if v < 10.0 * born {
            log::warn!("{name} velocity {v} is not much larger than Z alpha = {born}: Born approximation is doubtful");
        }
    }
    let ks = kin.k_prime.spatial();
    let khat = [ks[0] / kin.k_prime.t, ks[1] / kin.k_prime.t, ks[2] / kin.k_prime.t];
    let perp = |v: [f64; 3]| {
        let c = dot(v, khat);
        [v[0] - c * khat[0], v[1] - c * khat[1], v[2] - c * khat[2]]
    };
    let (p0n, pn) = (dot(p0, p0).sqrt(), dot(p, p).sqrt());
    let d0 = e0 - dot(p0, khat);
    let d = e - dot(p, khat);
    let (t0, t) = (perp(p0), perp(p));
    let q = [p0[0] - p[0] - k * khat[0], p0[1] - p[1] - k * khat[1], p0[2] - p[2] - k * khat[2]];
    let q2 = dot(q, q);
    if !(q2 > 0.0) {
        return Err(Error::DegenerateKinematics("vanishing momentum transfer to the nucleus".into()));
    }
    let (a2, b2, ab) = (dot(t, t) / (d * d), dot(t0, t0) / (d0 * d0), dot(t, t0) / (d * d0));
    let diff = [t[0] - t0[0], t[1] - t0[1], t[2] - t0[2]];
    let braces = a2 * (4.0 * e0 * e0 - q2) + b2 * (4.0 * e * e - q2) - 2.0 * ab * (4.0 * e0 * e - q2)
        + 2.0 * k * k * dot(diff, diff) / (d * d0);
    let r0 = ALPHA_FS / m;
    let pref = f64::from(z).powi(2) * r0 * r0 * ALPHA_FS / (8.0 * PI * PI);
    Ok(pref * (pn / p0n) / (k * m) / (q2 * q2) * braces)
}
