use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u32),
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("non-admissible relation: {0}")]
    NonAdmissibleRelation(String),
    #[error("algebra basis has {size} elements, above the cap of {cap}")]
    BasisTooLarge { size: usize, cap: usize },
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("undecided: {what} needs {needed} (search cap {cap})")]
    Undecided {
        what: &'static str,
        needed: String,
        cap: u64,
    },
    #[error("object index {0} is not in the universe")]
    NotInUniverse(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
