use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("boundary behaviour not classified: {0}")]
    Unclassified(String),
    #[error("regression failed: {0}")]
    Fit(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("KMS condition violated: {0}")]
    KmsViolation(String),
    #[error("integral diverges: {0}")]
    DivergentIntegral(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("pairing of two boundary vectors at {0} is undefined")]
    UndefinedPairing(String),
    #[error("boundary point mapped to infinity: {0}")]
    Infinity(String),
    #[error("continuation parameter outside the strip: {0}")]
    Strip(String),
    #[error("continuation path passes a singularity: {0}")]
    PathSingularity(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("the two formulas disagree: {0}")]
    FormulaMismatch(String),
    #[error("point is not on de Sitter space: {0}")]
    OffShell(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("not an Euler element")]
    NotEuler,
    #[error("element is not in p: {0}")]
    NotInP(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
