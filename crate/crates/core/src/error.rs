use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    InvalidSpec(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not in the centralizer of {1}")]
    NotInCentralizer(String, String),
    #[error("index {index} out of range (expected < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("malformed braid: {0}")]
    MalformedBraid(String),
    #[error("inconsistent coloring: strands {strands:?} form one component but carry colors {colors:?}")]
    InconsistentColoring { strands: Vec<usize>, colors: Vec<String> },
    #[error("unknown object label {0:?}")]
    UnknownLabel(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
