use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid policy parameters: {0}")]
    InvalidParams(String),
    #[error("payoff at {location} is not finite")]
    NonFinitePayoff { location: String },
    #[error("state is not normalized: squared magnitudes sum to {sum}")]
    NotNormalized { sum: f64 },
    #[error("state has zero norm")]
    ZeroState,
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfUnitInterval { name: &'static str, value: f64 },
    #[error("trace has imaginary residue {residue}")]
    ImaginaryResidue { residue: f64 },
    #[error("not a density matrix: {0}")]
    InvalidDensity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
