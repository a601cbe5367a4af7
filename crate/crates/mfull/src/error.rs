use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("S-pair budget of {0} pairs exceeded")]
    Budget(usize),
    #[error("non-homogeneous input: {0}")]
    NonHomogeneous(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("ambient mismatch: {0}")]
    Ambient(String),
    #[error("twist mismatch: {0}")]
    Twist(String),
    #[error("zero module")]
    ZeroModule,
    #[error("ideal is not proper and nonzero")]
    Improper,
    #[error("not Artinian: {0}")]
    NotArtinian(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("scenario: {0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that come from resource limits rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}
