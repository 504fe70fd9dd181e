use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("degree {0} is too small for this operation")]
    DegreeTooSmall(usize),
    #[error("variable `{0}` has no rewriting rule in the quotient ring")]
    MissingRule(String),
    #[error("relation for `{0}` is not triangular")]
    NotTriangular(String),
    #[error("divisor does not involve variable `{0}`")]
    ZeroDivisor(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("Gram matrix is not integral")]
    NotIntegral,
    #[error("degenerate Gram matrix")]
    DegenerateGram,
    #[error("vector is not contained in the lattice: {0}")]
    NotInLattice(String),
    #[error("glue vector {0} does not pair integrally with the lattice")]
    NotInDual(usize),
    #[error("group generated exceeds the element cap of {0}")]
    GroupTooLarge(usize),
    #[error("matrix for element {0} is not invertible over Z")]
    NotUnimodular(usize),
    #[error("H^1 quotient has free rank {0}")]
    FreeCohomology(usize),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("singular curve: {0}")]
    Singular(String),
    #[error("invalid line: {0}")]
    InvalidLine(String),
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("line meets the curve degenerately: {0}")]
    Degenerate(String),
    #[error("model derivation failed: {0}")]
    Derivation(String),
    #[error("containment assertion failed for subgroups {0:?}")]
    Containment(Vec<String>),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("golden data: {0}")]
    Golden(String),
}

pub type Result<T> = std::result::Result<T, Error>;
