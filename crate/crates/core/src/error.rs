use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph description has no `vertices:` line")]
    MissingVertices,
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge {a}-{b} has label {label}, labels must be >= 2")]
    InvalidLabel { a: String, b: String, label: u64 },
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("edge {0}-{1} declared twice")]
    DuplicateEdge(String, String),
    #[error("at most {max} vertices are supported, got {got}")]
    TooManyVertices { max: usize, got: usize },
    #[error("{what} exceeded cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("operands belong to different graphs")]
    GraphMismatch,
    #[error("conjugate of `{generator}` has length {length}; g W_X g^-1 is not inside W_Y")]
    NotConjugatedInto { generator: String, length: usize },
    #[error("`{0}` and `{1}` are adjacent; a Bass-Serre pivot must be a non-edge")]
    NotANonEdge(String, String),
    #[error("inconsistent group tables: {0}")]
    InconsistentTables(String),
    #[error("braid move {index} does not apply: {reason}")]
    InvalidCertificate { index: usize, reason: String },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
