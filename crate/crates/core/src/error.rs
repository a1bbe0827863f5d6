use thiserror::Error;

/// Errors raised while constructing structures or running checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("structure has no unit")]
    NotUnital,
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("not graded: {0}")]
    NotGraded(String),
    #[error("expected a single unit, found {0}")]
    MultipleUnits(usize),
    #[error("weight algebra is not a Kleene algebra: {0}")]
    NotKleene(String),
    #[error("composition undefined on ({0}, {1})")]
    Undefined(String, String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid law index {0}")]
    InvalidLaw(usize),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
