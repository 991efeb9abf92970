use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} exceeds cap: {size} > {limit}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{0} is not a prime")]
    InvalidPrime(u64),

    #[error("element set is not a subgroup")]
    NotASubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subset is not closed under specialization")]
    NotClosed,

    #[error("subset does not match its declared flavor: {0}")]
    FlavorMismatch(&'static str),

    #[error("not a Thomason subset of the chromatic model: {0}")]
    IllegalThomason(String),

    #[error("loci live on different spectra")]
    SpectrumMismatch,

    #[error("unknown output format `{0}`")]
    UnknownFormat(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("specialization relation is not antisymmetric (points `{0}` and `{1}`)")]
    NotAntisymmetric(String, String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid document: {0}")]
    Document(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
