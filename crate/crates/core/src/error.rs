use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps these onto exit codes, see [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    SizeExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("element {0} does not belong to a field of order {1}")]
    FieldMismatch(u64, usize),

    #[error("value is not real")]
    NotReal,

    #[error("polynomial degree {degree} exceeds q - 1 = {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("g_{index} is not odd: coefficient of X^{degree} is nonzero")]
    OddnessViolation { index: usize, degree: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("graph is not bipartite with respect to the given partition")]
    NotBipartite,

    #[error("spec mismatch: {0}")]
    SpecMismatch(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeExceeded { .. } => 3,
            Error::HypothesisViolated(_) => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
