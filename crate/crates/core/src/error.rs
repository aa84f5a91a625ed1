use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element label {0:?}: labels must be non-empty and contain no whitespace")]
    InvalidLabel(String),
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("declared relations contain a directed cycle through {0:?}")]
    RelationCycle(String),
    #[error("element {0:?} appears in more than one part")]
    ElementCollision(String),
    #[error("poset has {size} elements, limit is {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("poset is not a connected unicycle poset: {0}")]
    NotUnicycle(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("cover graph is not a tree: {0}")]
    NotATree(String),
    #[error("poset has no minimum element")]
    NoMinimum,
    #[error("element {0:?} is not extremal on the requested side")]
    NotExtremal(String),
    #[error("invalid rooted tree: {0}")]
    InvalidTree(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid crown size {0}")]
    InvalidSize(usize),
    #[error("cover number {p} out of range for crown of size {n}")]
    OutOfRange { n: usize, p: usize },
    #[error("unsupported poset class: {0}")]
    UnsupportedClass(String),
    #[error("more than {0} linear extensions")]
    CapExceeded(usize),
    #[error("invalid random model: {0}")]
    InvalidModel(String),
    #[error("realizer must have exactly {expected} words, found {found}")]
    WrongWordCount { expected: usize, found: usize },
}
