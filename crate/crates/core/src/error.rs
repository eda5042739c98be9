use alloc::string::String;

/// Errors produced by the shift-space toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("symbol index {0} is out of range for the alphabet")]
    SymbolOutOfRange(u8),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("word lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty word where a nonempty word is required")]
    EmptyWord,
    #[error("invalid index range [{start}, {end})")]
    InvalidRange { start: usize, end: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the shift space is empty")]
    EmptyShift,
    #[error("the graph has no bi-infinite path")]
    EmptyGraph,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error("the presentation is not topologically mixing")]
    NotMixing,
    #[error("the graph is not strongly connected")]
    Reducible,
    #[error("the cost graph has no cycle")]
    Acyclic,
    #[error("no bridging word of length {k} exists")]
    NoBridge { k: usize },
    #[error("word {0} is not in the language of the shift")]
    WordNotInLanguage(String),
    #[error(
        "point is not in the Markov approximation of order {order}: window {window} is not allowed"
    )]
    NotInMarkovApproximation { order: usize, window: String },
    #[error("invalid order {0}")]
    InvalidOrder(usize),
    #[error("parts have gcd {0}, expected 1")]
    GcdNotOne(u64),
    #[error("dominance violated at coordinate {index}")]
    DominanceViolated { index: usize },
    #[error("gap {gap} is too short for surgery (needs at least {needed})")]
    GapTooShort { gap: u64, needed: u64 },
    #[error("gap {0} does not belong to S")]
    GapNotInSet(u64),
    #[error("point has a nonempty preperiod")]
    NonemptyPreperiod,
    #[error("empty set where a nonempty set is required")]
    EmptySet,
    #[error("block lengths differ ({left} vs {right})")]
    BlockLengthMismatch { left: usize, right: usize },
    #[error("generator stream exhausted before {0}")]
    StreamExhausted(u64),
    #[error("stream needs declared metadata: {0}")]
    MissingMetadata(&'static str),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for failures caused by a configured size cap rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
