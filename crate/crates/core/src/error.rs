use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("state has zero norm and cannot be normalized")]
    ZeroNorm,

    #[error("quaternion modulus {modulus:e} is too small to invert")]
    NearZeroQuaternion { modulus: f64 },

    #[error("exponential axis must be a unit pure imaginary quaternion")]
    InvalidAxis,

    #[error("state sits at a pole of the Ω-decomposition (Ω = {omega})")]
    PoleState { omega: f64 },

    #[error("|Q| = {modulus} is inconsistent with Ω = {omega}")]
    InconsistentOmega { modulus: f64, omega: f64 },

    #[error("fiber point is not a unit quaternion (modulus {modulus})")]
    InvalidFiberPoint { modulus: f64 },

    #[error("state is entangled (concurrence {concurrence:e})")]
    NotSeparable { concurrence: f64 },

    #[error("Ω = {omega} is extremal; the state family degenerates to separable states")]
    DegenerateOmega { omega: f64 },

    #[error("not a density matrix: {0}")]
    BadDensityMatrix(&'static str),

    #[error("point lies at the stereographic projection pole")]
    AtPole,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),
}
