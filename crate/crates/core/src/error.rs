use thiserror::Error;

/// Everything that can go wrong building trees, running codecs, doing
/// polynomial arithmetic or enumerating.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("cycle through vertex {0}")]
    CycleDetected(usize),
    #[error("vertex {0} is not connected to the root")]
    DisconnectedInput(usize),
    #[error("more than one root: {0} and {1}")]
    DuplicateRoot(usize, usize),
    #[error("vertex {0} has more than one parent")]
    DuplicateParent(usize),
    #[error("no root")]
    MissingRoot,
    #[error("tree must have at least one vertex")]
    Empty,
    #[error("code entry {entry} at position {position} is outside 1..={n}")]
    EntryOutOfRange {
        entry: usize,
        position: usize,
        n: usize,
    },
    #[error("code of length {len} does not fit n = {n}")]
    CodeLength { len: usize, n: usize },
    #[error("tree is rooted at {0}, expected root 1")]
    RootNotOne(usize),
    #[error("{0}")]
    DomainError(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    ResourceBound { n: usize, cap: usize },
    #[error("integer overflow in polynomial arithmetic")]
    IntegerOverflow,
    #[error("polynomials over different variable sets ({0} vs {1})")]
    VariableMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
