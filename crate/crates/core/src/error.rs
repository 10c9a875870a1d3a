use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series constant term is {0}, expected 1")]
    NotAnIterate(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("need Bell polynomials for 1..{expected}, got {got}")]
    IncompleteLower { expected: usize, got: usize },

    #[error("interpolated polynomial for n = {n} predicts {predicted} at m = {m}, recursion gives {actual}")]
    HeldOutMismatch {
        n: usize,
        m: u64,
        predicted: String,
        actual: String,
    },

    #[error("telescoped and interpolated polynomials for n = {n} differ at m^{degree}: {constructed} vs {interpolated}")]
    ConstructionMismatch {
        n: usize,
        degree: usize,
        constructed: String,
        interpolated: String,
    },

    #[error("{0} is not an integer")]
    NotInteger(String),
}
