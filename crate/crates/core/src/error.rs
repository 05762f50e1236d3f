use thiserror::Error;

/// Errors raised by the engine. Messages are stable; the CLI prints them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular Satake parameter")]
    SingularSatake,
    #[error("missing Euler factor at prime {0}")]
    MissingPrime(u64),
    #[error("missing Hecke datum at prime {0}")]
    MissingHecke(u64),
    #[error("series too short: need length {needed}, have {have}")]
    SeriesTooShort { needed: usize, have: usize },
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("not a balanced 5-tuple")]
    NotBalanced,
    #[error("not symplectic")]
    NotSymplectic,
    #[error("space not one-dimensional")]
    NotOneDimensional,
    #[error("no cusp forms of weight {0}")]
    NoCuspForms(u32),
    #[error("unsupported weight {0}")]
    UnsupportedWeight(u32),
    #[error("prime {p} beyond expansion precision {precision}")]
    BeyondPrecision { p: u64, precision: usize },
    #[error("Ramanujan bound violated at p = {p}: |lambda| = {value}")]
    RamanujanViolation { p: u64, value: f64 },
    #[error("inhomogeneous polynomial")]
    Inhomogeneous,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("character is not primitive")]
    Imprimitive,
    #[error("pole: {0}")]
    Pole(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("gcd condition violated: {0}")]
    NotCoprime(String),
    #[error("insufficient coefficient precision: need {needed} coefficients, have {have}")]
    InsufficientPrecision { needed: usize, have: usize },
    #[error("modular reconstruction failed at n = {0}")]
    Reconstruction(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
