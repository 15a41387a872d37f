use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library. Variants fall into two families that the
/// CLI maps onto distinct exit codes: violated preconditions and exceeded
/// size caps (see [`Error::is_cap`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("neuron count {0} is outside 1..=64")]
    InvalidNeuronCount(usize),

    #[error("neuron {neuron} in word {word:?} is outside [1, {n}]")]
    NeuronOutOfRange {
        word: Vec<usize>,
        neuron: usize,
        n: usize,
    },

    #[error("strict mode: the input does not list the empty codeword")]
    MissingEmptyWord,

    #[error("code is not intersection complete: {0}")]
    NotIntersectionComplete(String),

    #[error("code is not a simplicial complex: {0}")]
    NotSimplicialComplex(String),

    #[error("set {index} is not a trunk of the source code")]
    NotATrunk { index: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} is {value}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn cap(what: &'static str, value: usize, cap: usize) -> Self {
        Error::CapExceeded { what, value, cap }
    }
}
