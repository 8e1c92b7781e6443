use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),

    #[error("invalid digit {digit} for p = {p}")]
    InvalidDigit { digit: u32, p: u32 },

    #[error("invalid letter {letter} for p = {p}")]
    InvalidLetter { letter: u32, p: u32 },

    #[error("cannot refine from depth {from} down to depth {to}")]
    DepthDecrease { from: usize, to: usize },

    #[error("p^k = {p}^{depth} exceeds the size cap of {cap} values")]
    SizeCap { p: u32, depth: usize, cap: usize },

    #[error("operands live over different primes ({left} vs {right})")]
    PrimeMismatch { left: u32, right: u32 },

    #[error("value array has length {got}, expected p^depth = {expected}")]
    BadLength { got: usize, expected: usize },

    #[error("truncation {got} too small, need at least {needed}")]
    TruncationTooSmall { got: usize, needed: usize },

    #[error(
        "pairing series did not stabilize (computed through length {computed}); rerun with truncation >= {needed}"
    )]
    NotStabilized { computed: usize, needed: usize },

    #[error("internal mismatch in {context}: expected {expected}, got {actual}")]
    Mismatch {
        context: String,
        expected: String,
        actual: String,
    },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("division by zero")]
    DivisionByZero,
}

impl Error {
    pub(crate) fn mismatch(context: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        Error::Mismatch {
            context: context.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}
