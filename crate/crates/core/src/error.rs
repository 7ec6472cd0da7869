//! Crate-wide error type. Every fallible operation returns one of these;
//! all values are immutable so no error leaves partially-updated state.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {0} out of range (indices start at {1})")]
    IndexOutOfRange(i64, i64),

    #[error("operation undefined on the zero element")]
    UndefinedOnZero,

    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed rational literal `{0}`")]
    InvalidRationalLiteral(String),

    #[error("mismatched ring contexts: {0} vs {1}")]
    ContextMismatch(String, String),

    #[error("invalid quotient target T_{target} from T_{source}")]
    InvalidQuotientTarget { source: String, target: u32 },

    #[error("mismatched variable alphabets: {0} vs {1}")]
    AlphabetMismatch(String, String),

    #[error("atom {atom} not allowed in {alphabet}")]
    AtomNotAllowed { atom: String, alphabet: String },

    #[error("differentiator key (m={m}, k={k}, s={s}) outside domain m ≥ 0, s ≥ -1, k ≥ m-1")]
    DifferentiatorDomain { m: u32, k: i64, s: i64 },

    #[error("lowering excluded on the vanishing diagonal m = k-s = 2n+1 (m={m}, k={k}, s={s})")]
    LoweringExcluded { m: u32, k: i64, s: i64 },

    #[error("lowering of {key} did not terminate as expected: {detail}")]
    LoweringFailed { key: String, detail: String },

    #[error("vectors indexed by mismatched coordinate sets")]
    CoordinateMismatch,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
