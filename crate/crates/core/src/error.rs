use thiserror::Error;

use crate::scalar::Scalar;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("resonance: the diagonal operator vanishes at exponent {exponent} where the source is nonzero")]
    Resonance { exponent: Scalar },
    #[error("offsets {left} and {right} do not differ by an integer")]
    IncompatibleOffsets {
        left: Box<Scalar>,
        right: Box<Scalar>,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("indicial extraction supports diagonal operators of degree 1 or 2, got degree {0}")]
    DegreeUnsupported(usize),
    #[error("indicial root is irrational: {0}")]
    IrrationalRoot(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("interval contains the singular point {point}")]
    SingularInterval { point: f64 },
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::Resonance { .. } => "Resonance",
            Error::IncompatibleOffsets { .. } => "IncompatibleOffsets",
            Error::InvalidParams(_) => "InvalidParams",
            Error::UnknownCase(_) => "UnknownCase",
            Error::DegreeUnsupported(_) => "DegreeUnsupported",
            Error::IrrationalRoot(_) => "IrrationalRoot",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::DegenerateParameters(_) => "DegenerateParameters",
            Error::SingularInterval { .. } => "SingularInterval",
            Error::ConstraintViolation(_) => "ConstraintViolation",
            Error::Parse(_) => "Parse",
        }
    }
}
