use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("polynomial is not separable")]
    NonSeparable,
    #[error("bad factorization: {0}")]
    BadFactorization(String),
    #[error("precision exhausted while evaluating {0}")]
    PrecisionExhausted(String),
    #[error("modulus too large for {0}")]
    ModulusTooLarge(String),
    #[error("value is not a root: {0}")]
    NotARoot(String),
    #[error("class polynomial has no root modulo p")]
    NoRoot,
    #[error("no twist has the requested order")]
    NoTwist,
    #[error("curve is not ordinary")]
    NotOrdinary,
    #[error("N is outside the admissible interval: {0}")]
    OutOfInterval(String),
    #[error("malformed model: {0}")]
    MalformedModel(String),
    #[error("factoring budget exceeded: {0}")]
    FactorBudgetExceeded(String),
    #[error("cache I/O: {0}")]
    Io(String),
}

impl Error {
    /// Stable upper-case code used in CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvariantViolation(_) => "INVARIANT_VIOLATION",
            Error::NonSeparable => "NON_SEPARABLE",
            Error::BadFactorization(_) => "BAD_FACTORIZATION",
            Error::PrecisionExhausted(_) => "PRECISION_EXHAUSTED",
            Error::ModulusTooLarge(_) => "MODULUS_TOO_LARGE",
            Error::NotARoot(_) => "NOT_A_ROOT",
            Error::NoRoot => "NO_ROOT",
            Error::NoTwist => "NO_TWIST",
            Error::NotOrdinary => "NOT_ORDINARY",
            Error::OutOfInterval(_) => "OUT_OF_INTERVAL",
            Error::MalformedModel(_) => "MALFORMED_MODEL",
            Error::FactorBudgetExceeded(_) => "FACTOR_BUDGET_EXCEEDED",
            Error::Io(_) => "IO",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}
