use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("k must be at least {min}, got {k}")]
    KTooSmall { k: u32, min: u32 },

    #[error("iterate W_{n} has {len} digits, above the materialization guard of {guard}")]
    SizeGuardExceeded { n: usize, len: String, guard: u64 },

    #[error("the factor must be non-empty")]
    EmptyFactor,

    #[error("expected a word of length {expected}, got length {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("digit overflow while shifting {digit} by {by}")]
    DigitOverflow { digit: u64, by: u64 },

    #[error("{0} is not a factor of the infinite word")]
    NotAFactor(String),

    #[error("no recurrence lemma applies to the factor {0}")]
    UnclassifiedFactor(String),

    #[error("engine {engine} is not applicable to the factor {factor}")]
    EngineInapplicable { engine: String, factor: String },

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("the denominator has zero constant term, no power series expansion exists")]
    NonExpandable,

    #[error("position {position} with window length {len} lies outside a word of length {word_len}")]
    OutOfRange { position: u64, len: usize, word_len: String },

    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("no linear recurrence of order at most {order_cap} fits the supplied terms")]
    NoRecurrenceFound { order_cap: usize },

    #[error("invalid input: {0}")]
    Parse(String),
}
