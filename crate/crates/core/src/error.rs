use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("zero divisor: element shares a factor with the modulus")]
    ZeroDivisor,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("automorphism invariant violated: generator {index} is not a root of the modulus")]
    InvalidAutomorphism { index: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("unsupported group: {0}")]
    Unsupported(String),
    #[error("not a unit: component {factor} modulo Phi_{order} is not invertible")]
    NotAUnit { factor: usize, order: usize },
    #[error("not a unit: multiplication matrix is singular")]
    SingularMultiplication,
    #[error("interpolation failure: {0}")]
    Interpolation(String),
    #[error("dense oracle guard exceeded: degree {n} > {guard}")]
    GuardExceeded { n: usize, guard: usize },
    #[error("budget exhausted after {attempts} attempts")]
    BudgetExhausted { attempts: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
