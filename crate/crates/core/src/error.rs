use thiserror::Error;

/// Errors raised by the kernel and the checks built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot factor zero")]
    FactorZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial does not have integer coefficients")]
    NotIntegral,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("cyclotomic index must be at least 1")]
    ZeroIndex,
    #[error("cohomological degree {0} must be even")]
    OddDegree(u32),
    #[error("cohomological degree {0} must be odd")]
    EvenDegree(u32),
    #[error("degrees {0} and {1} have different parity")]
    ParityMismatch(u32, u32),
    #[error("Hodge numbers sum to {found}, expected {expected}")]
    HodgeMismatch { expected: usize, found: usize },
    #[error("Hodge vector has length {found}, expected {expected}")]
    HodgeLength { expected: usize, found: usize },
    #[error("sum of negative slopes {0} is not an integer")]
    NonIntegralSlopeSum(String),
    #[error("polynomial does not satisfy a functional equation T^N f(1/T) = ±f(T)")]
    FunctionalEquation,
    #[error("q^(d/2) scaling is irrational for this input")]
    IrrationalTwist,
    #[error("spectral precondition violated: {0}")]
    Spectrum(String),
    #[error("instance generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
