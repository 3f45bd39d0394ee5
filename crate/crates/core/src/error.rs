use thiserror::Error;

use crate::sync::JointSyncResult;

/// Errors produced by the algebra, automata and estimation layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(
        "NonPositiveEntry: entry {index} is {value}, probability vectors must be strictly positive"
    )]
    NonPositiveEntry { index: usize, value: f64 },

    #[error("NonFiniteEntry: entry {index} is {value}")]
    NonFiniteEntry { index: usize, value: f64 },

    #[error("DimensionTooSmall: probability vectors need at least 2 entries, got {0}")]
    DimensionTooSmall(usize),

    #[error("DimensionMismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("Overflow: scaling by {alpha} left the representable range")]
    Overflow { alpha: f64 },

    #[error("DegenerateGeodesic: the two endpoints coincide")]
    DegenerateGeodesic,

    #[error("NotOrthogonal: inner product of the two directions is {inner}")]
    NotOrthogonal { inner: f64 },

    #[error("InvalidMachine: {0}")]
    InvalidMachine(String),

    #[error("NotErgodic: {sinks} closed communicating classes, expected exactly one")]
    NotErgodic { sinks: usize },

    #[error("ZeroMass: belief update on symbol {symbol} has no support")]
    ZeroMass { symbol: usize },

    #[error("AlphabetMismatch: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    #[error("UnknownSymbol: {0:?} is not in the alphabet")]
    UnknownSymbol(String),

    #[error("UnknownState: {0:?}")]
    UnknownState(String),

    #[error("DepthExceeded: no {eps}-synchronizing string up to length {max_depth} (best achieved {})", best.achieved())]
    DepthExceeded {
        eps: f64,
        max_depth: usize,
        best: Box<JointSyncResult>,
    },

    #[error("MultipleRecurrentClasses: the uniformly driven pair chain has {0} recurrent classes")]
    MultipleRecurrentClasses(usize),

    #[error("ZeroNorm: norm {0} is below the angle threshold")]
    ZeroNorm(f64),

    #[error("StreamTooShort: stream of length {len} cannot support context depth {depth}")]
    StreamTooShort { len: usize, depth: usize },

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),

    #[error("Parse: line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("Io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short name of the error case, used by the command line diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPositiveEntry { .. } => "NonPositiveEntry",
            Error::NonFiniteEntry { .. } => "NonFiniteEntry",
            Error::DimensionTooSmall(_) => "DimensionTooSmall",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Overflow { .. } => "Overflow",
            Error::DegenerateGeodesic => "DegenerateGeodesic",
            Error::NotOrthogonal { .. } => "NotOrthogonal",
            Error::InvalidMachine(_) => "InvalidMachine",
            Error::NotErgodic { .. } => "NotErgodic",
            Error::ZeroMass { .. } => "ZeroMass",
            Error::AlphabetMismatch { .. } => "AlphabetMismatch",
            Error::UnknownSymbol(_) => "UnknownSymbol",
            Error::UnknownState(_) => "UnknownState",
            Error::DepthExceeded { .. } => "DepthExceeded",
            Error::MultipleRecurrentClasses(_) => "MultipleRecurrentClasses",
            Error::ZeroNorm(_) => "ZeroNorm",
            Error::StreamTooShort { .. } => "StreamTooShort",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse { .. } => "Parse",
            Error::Io(_) => "Io",
        }
    }
}
