use num_bigint::BigUint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,

    #[error("ragged matrix: row {row} has {len} entries, expected {dim}")]
    RaggedMatrix { row: usize, len: usize, dim: usize },

    #[error("exponent must be at least 1")]
    ZeroExponent,

    #[error("node {node} out of range for dimension {dim}")]
    NodeOutOfRange { node: usize, dim: usize },

    #[error("restriction needs a nonempty, strictly increasing index set")]
    BadIndexSet,

    #[error("empty word")]
    EmptyWord,

    #[error("word expansion of length {length} exceeds the limit of {limit}")]
    ExpansionTooLarge { length: BigUint, limit: BigUint },

    #[error("invalid letter {0:?}")]
    InvalidLetter(char),

    #[error("letter {letter} out of range 1..={rank}")]
    LetterOutOfRange { letter: u8, rank: u8 },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("exponent t = {t} violates t >= (n-1)^2 + 1 = {bound}")]
    ExponentBound { t: u64, bound: u64 },

    #[error("not an identity: {0}")]
    NotAnIdentity(String),

    #[error("word of length {len} exceeds the Knuth-closure cap {cap}")]
    CapExceeded { len: usize, cap: usize },

    #[error("witness failed: both sides evaluate to the same value")]
    WitnessFailed,

    #[error("diagonal repair at level {level} needed more than {cap} trailing b's")]
    RepairCapExceeded { level: usize, cap: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("oracle {oracle} failed: {detail}")]
    OracleFailure { oracle: String, detail: String },

    #[error("{0}")]
    Invalid(String),
}
