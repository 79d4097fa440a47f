use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Bloch vector ({x}, {y}, {z}) has norm {norm}, expected 1")]
    NonUnitBlochVector { x: f64, y: f64, z: f64, norm: f64 },

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("Tr[ab] has imaginary part {residue:e}; inputs are not Hermitian")]
    ImaginaryTrace { residue: f64 },

    #[error("sharpness eta = {0} must lie in [0, 1]")]
    SharpnessOutOfRange(f64),

    #[error("|alpha| + eta = {sum} exceeds 1 (alpha = {alpha}, eta = {eta}); effects would not be positive")]
    NotPositive { alpha: f64, eta: f64, sum: f64 },

    #[error("parameter {name} = {value} is not finite")]
    NonFinite { name: &'static str, value: f64 },

    #[error("Werner weight p = {0} must lie in [0, 1]")]
    WernerWeightOutOfRange(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("scan needs at least 2 steps per axis, got {0}")]
    TooFewSteps(usize),
}
