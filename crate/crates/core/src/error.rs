use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("typing mismatch: {0}")]
    TypeMismatch(String),

    #[error("scalar {value} does not lie in {ring}")]
    InvalidScalar { value: String, ring: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("quiver has a directed cycle: {}", cycle.join(" -> "))]
    CyclicQuiverUnsupported { cycle: Vec<String> },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("ambient mismatch between subobjects")]
    AmbientMismatch,

    #[error("subobject is not contained in the ambient subobject")]
    NotContained,

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("sort mismatch in equation: {0}")]
    SortMismatch(String),

    #[error("invalid module morphism: {0}")]
    InvalidMorphism(String),

    #[error("object carries no presentation")]
    MissingPresentation,

    #[error("morphism endpoints or modes do not match: {0}")]
    EndpointMismatch(String),

    #[error("invalid pairs-category data: {0}")]
    InvalidPairsData(String),

    #[error("long exact sequence data missing: {0}")]
    MissingLesData(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// Parse-class errors (as opposed to domain errors).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Format(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
