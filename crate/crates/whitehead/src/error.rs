use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("empty word not allowed here")]
    EmptyWord,

    #[error("malformed automorphism: {0}")]
    MalformedAutomorphism(String),

    #[error("cannot parse word token `{0}`")]
    BadWordToken(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("gluing inconsistency at vertex {vertex}, point {point}: {detail}")]
    GluingInconsistency {
        vertex: String,
        point: usize,
        detail: String,
    },

    #[error("vertex {0} is not a cut vertex")]
    NotCutVertex(String),

    #[error("chosen part contains the opposite vertex {0}")]
    PartContainsOpposite(String),

    #[error("arc candidate needs two distinct faces")]
    IdenticalFaces,

    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("diagram file parse error on line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
