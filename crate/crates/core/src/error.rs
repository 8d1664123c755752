use thiserror::Error;

/// Errors raised by lattice sums, special functions and zero searches.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generators are (nearly) collinear: |Im(conj(w1)*w2)| = {cross:e}")]
    DegenerateLattice { cross: f64 },

    #[error("(nu/pi)*S = {value} is not a positive integer")]
    NonIntegralDimension { value: f64 },

    #[error("character value {value} does not have unit modulus")]
    NotUnitModulus { value: String },

    #[error("degree {degree} exceeds the cap {cap}")]
    Overflow { degree: usize, cap: usize },

    #[error("exponent with real part {re} would overflow")]
    ExponentOverflow { re: f64 },

    #[error("nome modulus {modulus} is not below 1")]
    NomeOutOfRange { modulus: f64 },

    #[error("zeta has a pole at lattice point ({m}, {n})")]
    PoleAtLatticePoint { m: i64, n: i64 },

    #[error("quasi-period requested for the zero lattice vector")]
    ZeroGamma,

    #[error("generator equations give mu = {mu1} and {mu2}")]
    InconsistentMu { mu1: String, mu2: String },

    #[error("lattice sum did not settle within {shells} shells")]
    NoConvergence { shells: usize },

    #[error("pseudo-character is not real valued")]
    NotRealCharacter,

    #[error("space has dimension {k}, expected 1")]
    NotOneDimensional { k: u32 },

    #[error("kernel section is identically zero (max reduced modulus {max_ratio:e} of mass)")]
    IdenticallyZero { max_ratio: f64 },

    #[error("contour stayed unstable after {attempts} shifts")]
    PathUnstable { attempts: usize },

    #[error("Newton refinement stalled from seed {seed}")]
    RefinementFailed { seed: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Variant name, used by the CLI and the C ABI to identify the failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DegenerateLattice { .. } => "DegenerateLattice",
            Error::NonIntegralDimension { .. } => "NonIntegralDimension",
            Error::NotUnitModulus { .. } => "NotUnitModulus",
            Error::Overflow { .. } => "Overflow",
            Error::ExponentOverflow { .. } => "Overflow",
            Error::NomeOutOfRange { .. } => "NomeOutOfRange",
            Error::PoleAtLatticePoint { .. } => "PoleAtLatticePoint",
            Error::ZeroGamma => "ZeroGamma",
            Error::InconsistentMu { .. } => "InconsistentMu",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotRealCharacter => "NotRealCharacter",
            Error::NotOneDimensional { .. } => "NotOneDimensional",
            Error::IdenticallyZero { .. } => "IdenticallyZero",
            Error::PathUnstable { .. } => "PathUnstable",
            Error::RefinementFailed { .. } => "RefinementFailed",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
