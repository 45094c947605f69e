use thiserror::Error;

use crate::diagram::EdgeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("edge {edge} occurs {count} time(s); every edge label must occur exactly twice")]
    EdgeMultiplicity { edge: EdgeId, count: usize },

    #[error("crossing index {index} out of range for a diagram with {len} crossing(s)")]
    CrossingOutOfRange { index: usize, len: usize },

    #[error("state has {got} marker(s) but the diagram has {expected} crossing(s)")]
    StateLength { expected: usize, got: usize },

    #[error("edge {0} does not occur in the diagram")]
    UnknownEdge(EdgeId),

    #[error("the diagram has no free circle to place a kink on")]
    NoFreeCircle,

    #[error("torus parameter must be positive, got {0}")]
    InvalidTorusParameter(i64),

    #[error("only T(2,n) torus links are supported, got T({0},{1})")]
    UnsupportedTorus(i64, i64),

    #[error("invalid braid word: {0}")]
    InvalidBraid(String),

    #[error("the reduced bracket of the empty diagram is undefined")]
    EmptyDiagram,

    #[error("{0} crossings exceed the enumeration limit of {max}", max = crate::MAX_CROSSINGS)]
    TooManyCrossings(usize),

    #[error("a resolution with {0} circles exceeds the limit of {max}", max = crate::MAX_CIRCLES)]
    TooManyCircles(usize),

    #[error("crossing {0} carries marker B; the sign exponent needs an A-marker")]
    NotAnAMarker(usize),

    #[error("enhanced states belong to different diagrams")]
    ForeignState,

    #[error("integer overflow during exact arithmetic")]
    Overflow,

    #[error("matrix shapes do not compose: {0}")]
    BasisMismatch(String),

    #[error("the composition of the two differentials is not zero")]
    NonzeroComposition,

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}
