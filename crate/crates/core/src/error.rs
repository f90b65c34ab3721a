use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative probability mass {mass} in row {row}")]
    NegativeMass { row: usize, mass: f64 },

    #[error("probability masses sum to {total}, expected 1 (use renormalization to accept)")]
    MassNotNormalized { total: f64 },

    #[error("duplicate key in row {row}: {key}")]
    DuplicateKey { row: usize, key: String },

    #[error("row {row} has {found} source values, expected {expected}")]
    RowArity {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("symbol `{symbol}` is not in the declared alphabet of {variable}")]
    UnknownSymbol { variable: String, symbol: String },

    #[error("invalid alphabet for {variable}: {reason}")]
    InvalidAlphabet { variable: String, reason: String },

    #[error("invalid variable selection: {0}")]
    InvalidVariableSelection(String),

    #[error("conditioning event has zero probability mass")]
    ZeroMassEvent,

    #[error("target alphabet is empty")]
    EmptyAlphabet,

    #[error("target outcomes are not tuples of a common arity")]
    TargetNotTuple,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("level {level} does not coarsen the level below it")]
    NotCoarsening { level: usize },

    #[error("level {level} repeats the level below it")]
    RepeatedLevel { level: usize },

    #[error("descriptor must start at the discrete partition and end at the trivial partition")]
    BadEndpoints,

    #[error("intermediate partition is not strictly between levels {lower} and {upper}")]
    NotBetween { lower: usize, upper: usize },

    #[error("target alphabet of size {size} exceeds the limit of {max}")]
    AlphabetTooLarge { size: usize, max: usize },

    #[error("descriptor covers {descriptor} outcomes but the target alphabet has {target}")]
    DescriptorAlphabetMismatch { descriptor: usize, target: usize },

    #[error("source collection is empty")]
    EmptyCollection,

    #[error("redundancy lattices are supported for 1 to {max} sources, got {n}")]
    TooManySources { n: usize, max: usize },

    #[error("antichain {0} is not a node of this lattice")]
    NodeNotInLattice(String),

    #[error("a two-source decomposition needs exactly 2 sources, got {0}")]
    NotTwoSources(usize),

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a size or resource cap rather than malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::AlphabetTooLarge { .. } | Error::TooManySources { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
