use thiserror::Error;

use crate::logic::Atom;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("atom `{0}` is not in the logic's signature")]
    Signature(Atom),

    #[error("weak negation `~` is not available in classical propositional logic")]
    WeakNegInClassical,

    #[error("invalid contrary pairing: {0}")]
    Pairing(String),

    #[error("the set of abnormalities must be nonempty")]
    EmptyAbnormalities,

    #[error("the set of assumptions must be nonempty")]
    EmptyAssumptions,

    #[error("assumption `{0}` has no contrary")]
    MissingContrary(String),

    #[error("closure is undefined for an oracle-backed rule set; query `derives` per goal")]
    IntensionalClosure,

    #[error("outside the translatable fragment: {0}")]
    Fragment(String),

    #[error("invalid rule naming: {0}")]
    Naming(String),

    #[error("invalid knowledge base: {0}")]
    KnowledgeBase(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("line {line}: {message}")]
    Problem { line: usize, message: String },

    #[error("{0}")]
    Usage(String),
}
