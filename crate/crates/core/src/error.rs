use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("interval [{lo}, {hi}] does not isolate exactly one root of the polynomial (found {roots})")]
    NotIsolating { lo: String, hi: String, roots: usize },

    #[error("refinement did not reach the requested width within {0} steps")]
    IterationLimit(usize),

    #[error("operation requires a rational or algebraic base, got {0}")]
    UnsupportedBase(String),

    #[error("value is not an element of the base field: {0}")]
    NotInField(String),

    #[error("minimal polynomial is not certified: {0}")]
    NonMinimalPolynomial(String),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("alphabets differ in size ({0} vs {1})")]
    SizeMismatch(u32, u32),

    #[error("digit {digit} is outside the alphabet {{{low}..{high}}}")]
    DigitOutOfAlphabet { digit: i32, low: i32, high: i32 },

    #[error("value lies outside the attainable interval")]
    OutOfRange,

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("comparison undecided at precision {0}")]
    UndecidedComparison(String),

    #[error("expansion automaton exceeded the state cap of {0}")]
    StateCapExceeded(usize),

    #[error("automaton is incomplete")]
    IncompleteAutomaton,

    #[error("depth {depth} exceeds the configured maximum {max}")]
    DepthCapExceeded { depth: usize, max: usize },

    #[error("no suitable n found up to the cap {0}")]
    NotFoundUnderCap(u32),

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
