use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("internal defect: {0}")]
    Defect(String),
    #[error("formula degenerates at d = 1")]
    DegreeOne,
    #[error(transparent)]
    Parse(#[from] crate::poly::ParsePolyError),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
