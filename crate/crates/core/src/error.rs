use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {symbol} out of range for length {len}")]
    SymbolOutOfRange { symbol: usize, len: usize },

    #[error("head {head} out of range [0, {bound}]")]
    HeadOutOfRange { head: usize, bound: usize },

    #[error("not a permutation of [0, {len}): {reason}")]
    NotAPermutation { len: usize, reason: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("cannot contract the empty permutation")]
    EmptyPermutation,

    #[error("code has no codewords")]
    EmptyCode,

    #[error("invalid head set: {0}")]
    InvalidHeadSet(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid REP spec at steps {steps:?}: {reason}")]
    InvalidSpec { steps: Vec<usize>, reason: String },

    #[error("spec line {line}: {reason}")]
    SpecParse { line: usize, reason: String },

    #[error("rank {rank} out of range at step {step} (size {size})")]
    RankOutOfRange {
        step: usize,
        rank: usize,
        size: usize,
    },

    #[error("head {head} not in head set at step {step}")]
    HeadNotInSet { step: usize, head: usize },

    #[error("class rank out of range for class {class}")]
    ClassRankOutOfRange { class: usize },

    #[error("code size {size} exceeds cap {cap}")]
    CapExceeded { size: BigUint, cap: u64 },

    #[error("decode failure: projected word {estimate:?} is not a permutation")]
    DecodeFailure { estimate: Vec<usize> },
}
