//! Multiphoton partial cross sections for spontaneous bremsstrahlung of an
//! electron scattered by a nucleus inside two collinear, linearly polarized
//! light waves.
//!
//! The crate is organised bottom-up:
//!
//! * [`relkin`]: four-vectors, laser-dressed kinematics and plane angles.
//! * [`mpbessel`]: ordinary, generalized and two-wave Bessel-type functions
//!   together with independent quadrature oracles.
//! * [`mpparams`]: the quantum multiphoton parameters and regime
//!   classification of a scattering configuration.
//! * [`xsection`]: partial weights, photon-number spectra with certified
//!   tails, sum rules and the field-free baseline cross section.
//!
//! Everything is expressed in relativistic units with ħ = c = 1; callers are
//! expected to measure energies in units of the electron mass.

// `!(x > 0.0)` deliberately rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod mpbessel;
pub mod mpparams;
pub mod relkin;
pub mod xsection;

pub use error::{Error, Result};
