use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least {min}, got {got}")]
    RankTooSmall { min: usize, got: usize },

    #[error("letter index {index} out of range for rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("graph parse error at line {line}: {message}")]
    GraphParse { line: usize, message: String },

    #[error("apartment parse error at line {line}: {message}")]
    ApartmentParse { line: usize, message: String },

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("graph has no basepoint")]
    MissingBasepoint,

    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not folded")]
    NotFolded,

    #[error("graph is acyclic: its unpointed core is empty")]
    EmptyCore,

    #[error("graph is acyclic: girth is undefined")]
    Acyclic,

    #[error("the trivial subgroup is not accepted here")]
    TrivialSubgroup,

    #[error("the trivial word is not accepted here")]
    TrivialWord,

    #[error("operation requires a pointed subgroup")]
    Unpointed,

    #[error("subgroup is not a free factor")]
    NotAFreeFactor,

    #[error("words do not form a basis of the free group")]
    NotABasis,

    #[error("index out of range or repeated: {0}")]
    BadIndex(String),

    #[error("wrong mode: {0}")]
    WrongMode(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
