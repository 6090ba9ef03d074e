use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed element: {0}")]
    Malformed(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter pole: {0}")]
    Pole(String),
    #[error("singular input: {0}")]
    Singular(String),
    #[error("not divisible by det(Z): {0}")]
    NotDivisible(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("jet degree {have} too low for order {need}")]
    JetDegree { have: usize, need: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not semi-holomorphic: {0}")]
    NotSemiHolomorphic(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("range error: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;
