use thiserror::Error;

/// Errors raised by table construction, measures, rates, the prover and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("state space too large: {states} states exceeds limit {limit}")]
    StateSpaceTooLarge { states: u128, limit: u128 },

    #[error("probability array has length {got}, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("not a distribution: {0}")]
    NotADistribution(String),

    #[error("invalid symbol {symbol} at position {position} (alphabet size {k})")]
    InvalidSymbol {
        position: usize,
        symbol: usize,
        k: usize,
    },

    #[error("configuration has {got} symbols, expected {expected}")]
    ConfigurationLength { expected: usize, got: usize },

    #[error("subset is empty")]
    EmptySubset,

    #[error("subset {mask:#b} refers to variables outside 0..{n}")]
    SubsetOutOfRange { mask: u32, n: usize },

    #[error("subsets overlap")]
    OverlappingSubsets,

    #[error("ordering is not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("internal consistency: {quantity} = {value} is negative beyond tolerance")]
    Inconsistent { quantity: &'static str, value: f64 },

    #[error("residue {m} must be below alphabet size {k}")]
    InvalidResidue { m: usize, k: usize },

    #[error("transition matrix is not row-stochastic: {0}")]
    NotStochastic(String),

    #[error("chain has {0} closed classes; the stationary distribution is not unique")]
    NonUniqueStationary(usize),

    #[error("block of length {n} over {k} symbols exceeds the dense table limit")]
    BlockTooLarge { n: usize, k: usize },

    #[error("unsupported number of variables: {0}")]
    UnsupportedN(usize),

    #[error("functional is not permutation symmetric")]
    NotSymmetric,

    #[error("general prover supports at most {max} variables, got {n}")]
    TooManyVariables { n: usize, max: usize },

    #[error("dimension mismatch: certificate for N={certificate}, target has N={target}")]
    DimensionMismatch { certificate: usize, target: usize },

    #[error("invalid target expression: {0}")]
    InvalidTarget(String),

    #[error("symbol {symbol} at position {position} is out of range for alphabet size {k}")]
    SymbolOutOfRange {
        position: usize,
        symbol: u64,
        k: usize,
    },

    #[error("input is empty")]
    EmptyFile,

    #[error("sequence of length {len} is too short for blocks of length {needed}")]
    SequenceTooShort { len: usize, needed: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
