use thiserror::Error;

/// Errors raised by the exact engines. Verification failures are reported in
/// report structures, not as errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by a zero divisor of Q(ζ)[θ]")]
    DivisionByZeroDivisor,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no invertible pivot in column {0}")]
    NonInvertiblePivot(usize),
    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: String, needed: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("index {index} out of range for {what}")]
    OutOfRange { what: String, index: usize },
    #[error("({i},{j}) is not in Λ_p: pi − j ≡ 0 mod 2p")]
    NotInLambda { i: i64, j: i64 },
    #[error("isomorphism check failed: {0}")]
    IsoCheckFailed(String),
    #[error("Yetter-Drinfeld compatibility fails: {0}")]
    YDViolation(String),
    #[error("relation not in the Nichols ideal: {0}")]
    RelationNotInKernel(String),
    #[error("graded dimension mismatch in degree {degree}: expected {expected}, got {got}")]
    DimMismatch { degree: usize, expected: usize, got: usize },
    #[error("reduction step cap exceeded ({0} steps)")]
    StepCapExceeded(usize),
    #[error("family constraint violated: {0}")]
    FamilyConstraintViolated(String),
    #[error("bialgebra axiom failed: {0}")]
    BialgebraAxiomFailed(String),
    #[error("antipode not found: {0}")]
    AntipodeNotFound(String),
    #[error("unsupported p = {0}: classification covers prime p and p = 4")]
    UnsupportedP(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used at process and ABI boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad parameters or input text.
    Usage,
    /// An object failed a structural check.
    Verification,
    /// A dimension or step cap was hit.
    Cap,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            InvalidParameter(_) | Parse(_) | OutOfRange { .. } | NotInLambda { .. } | FamilyConstraintViolated(_) | UnsupportedP(_) => {
                ErrorClass::Usage
            }
            CapExceeded { .. } | StepCapExceeded(_) => ErrorClass::Cap,
            _ => ErrorClass::Verification,
        }
    }
}
