use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime in 2..=251")]
    InvalidField(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("quiver has a directed cycle through vertex {0}")]
    CyclicQuiver(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("corner vertex set is empty")]
    EmptyCorner,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("functor is not {0} exact")]
    NotExact(&'static str),
    #[error("torsion pair is invalid: {0}")]
    InvalidPair(String),
    #[error("pair is incompatible with the localization: {reason}")]
    IncompatiblePair { reason: String, witness: Box<crate::modcat::Module> },
    #[error("object is not in the heart: {0}")]
    NotInHeart(String),
    #[error("projective resolution did not terminate within {0} steps")]
    ResolutionDepth(usize),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("t-structure predicates violate the sandwich condition")]
    SandwichViolated { witness: Box<crate::complexes::Complex> },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("scenario error: {0}")]
    Scenario(String),
}

impl Error {
    /// Errors caused by the input rather than by a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidField(_)
                | Error::Shape(_)
                | Error::CyclicQuiver(_)
                | Error::UnknownVertex(_)
                | Error::EmptyCorner
                | Error::AlgebraMismatch
                | Error::InvalidModule(_)
                | Error::InvalidMap(_)
                | Error::InvalidComplex(_)
                | Error::BoundExceeded(_)
                | Error::NotInHeart(_)
                | Error::Parse { .. }
                | Error::Scenario(_)
        )
    }
}
