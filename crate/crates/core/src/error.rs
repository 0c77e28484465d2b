use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator count mismatch: {0} vs {1}")]
    GeneratorMismatch(usize, usize),
    #[error("letter {letter} outside 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("generator count must be at least 1")]
    NoGenerators,
    #[error("nested bracket needs at least one argument")]
    EmptyNested,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{name}` needs at least {needed} generators, got {n}")]
    TooFewGenerators { name: String, needed: usize, n: usize },
    #[error("word {0} is not a Lyndon word")]
    NotLyndon(String),
    #[error("zero polynomial has no PBW degree")]
    ZeroPolynomial,
    #[error("expected homogeneous degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("subspaces live in different components ({0})")]
    ComponentMismatch(String),
    #[error("degree {degree} over {n} generators exceeds the word-index range")]
    IndexOverflow { n: usize, degree: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
