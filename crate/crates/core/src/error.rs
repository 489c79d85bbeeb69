use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("expected a polynomial of degree at least 1")]
    ConstantPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("moduli differ: {0} and {1}")]
    ModulusMismatch(u64, u64),
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("{what}: {needed} items exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("polynomial is not reciprocal")]
    NotReciprocal,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("factor shape violation: {0}")]
    ShapeViolation(String),
    #[error("kernel has dimension {got}, expected {expected}")]
    RankViolation { expected: usize, got: usize },
    #[error("sizes differ: {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("letter {letter} out of range for m = {m}")]
    LetterOutOfRange { letter: i64, m: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
