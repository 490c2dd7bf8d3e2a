use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a poset: {axiom} fails at {witness:?}")]
    NotAPoset { axiom: &'static str, witness: Vec<usize> },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("missing table `{0}`")]
    MissingTable(String),

    #[error("structure lacks the `{0}` component")]
    MissingComponent(&'static str),

    #[error("poset has no top element")]
    NoTop,

    #[error("poset is not bounded")]
    NoBounds,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a strong congruence: {clause} fails at {witness:?}")]
    NotStrongCongruence { clause: String, witness: Vec<usize> },

    #[error("size {size} exceeds the search cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("invalid structure: {0}")]
    Invalid(String),
}
