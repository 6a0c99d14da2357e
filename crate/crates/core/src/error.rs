use thiserror::Error;

use crate::meander::Arc;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid boundary orders: {0}")]
    InvalidOrders(String),

    #[error("not a meander: arcs {first} and {second} cross")]
    NotAMeander { first: Arc, second: Arc },

    #[error("permutation is not dissipative (endpoints are not fixed)")]
    NotDissipative,

    #[error("permutation is not Sturm")]
    NotSturm,

    #[error("enumeration size {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("enumeration size {0} is even; Sturm permutations have odd size")]
    EvenSize(usize),

    #[error("no equilibrium of Morse number 3")]
    NoCenter,

    #[error("several candidate centers: {0:?}")]
    MultipleCenters(Vec<usize>),

    #[error("hemisphere characterizations disagree: {0}")]
    PartitionMismatch(String),

    #[error("cascade target is not unique for vertex {vertex}: candidates {candidates:?}")]
    NonUnique {
        vertex: usize,
        candidates: Vec<usize>,
    },

    #[error("permutation is not a 3-meander template")]
    NotBallTemplate,

    #[error("scoop validation failed: {0}")]
    ValidationFailed(String),

    #[error("nose {{{0}, {1}}} is polar")]
    PolarNose(usize, usize),

    #[error("{{{0}, {1}}} is not a nose")]
    NotANose(usize, usize),

    #[error("permutation does not define a Sturm 3-ball")]
    NotBall,

    #[error("complex reconstruction failed: {0}")]
    ReconstructionAmbiguity(String),

    #[error("invalid cell complex: {0}")]
    InvalidComplex(String),

    #[error("face {0} has no unique boundary extremum")]
    NoUniqueExtremum(usize),

    #[error("meridian edge {edge} violates the side rule in face {face}")]
    SideRuleViolation { edge: usize, face: usize },

    #[error("no path pair satisfies the traversal rules")]
    NoPath,

    #[error("more than one path pair satisfies the traversal rules")]
    MultiplePaths,

    #[error("designed permutation {0:?} is not a 3-meander template")]
    TemplateCheckFailed(Vec<usize>),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
