use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter table: {0}")]
    ParameterTable(String),

    #[error("material `{0}` not found in parameter table")]
    MissingMaterial(String),

    #[error("material `{name}`: {reason}")]
    InvalidMaterial { name: String, reason: String },

    #[error("Al fraction {0} outside [0, 1]")]
    Composition(f64),

    #[error("elastic constants violate cubic stability: {0}")]
    Stiffness(String),

    #[error("strain component {index} = {value:e} exceeds the bound |ε| < 0.1")]
    StrainBound { index: usize, value: f64 },

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("matrix is not Hermitian (max |H - H†| = {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("states are not degenerate (splitting {0:e} eV)")]
    NotDegenerate(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
