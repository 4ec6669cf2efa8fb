use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate kinematics: {0}")]
    DegenerateKinematics(String),

    #[error("momentum is off the mass shell: {0}")]
    OffShell(String),

    #[error("plane spanned by {0} is undefined (parallel momenta)")]
    UndefinedPlane(&'static str),

    #[error("series truncation failed: requested accuracy {requested:e}, achieved bound {achieved:e}")]
    Accuracy { requested: f64, achieved: f64 },

    #[error("quadrature residual imaginary part {residual:e} exceeds {threshold:e}")]
    RepresentationMismatch { residual: f64, threshold: f64 },

    #[error("difference combination k1 - k2 vanishes for equal frequencies")]
    SingularCombination,

    #[error("normalization failure at shell radius {radius}: accumulated weight {accumulated:.15e}")]
    Normalization { radius: i64, accumulated: f64 },

    #[error("index pair ({l}, {s}) is an odd combination and has no interference counterpart")]
    NoMatchingCell { l: i64, s: i64 },

    #[error("combined polarization is undefined: resulting field strength vanishes")]
    DegeneratePolarization,

    #[error("kinematically forbidden: {0}")]
    Forbidden(String),
}
