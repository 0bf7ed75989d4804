use thiserror::Error;

use crate::model::{ElementId, ReactionId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown element {0}")]
    UnknownElement(ElementId),

    #[error("unknown reaction {0}")]
    UnknownReaction(ReactionId),

    #[error("element {element} is {found}, expected {expected}")]
    WrongKind {
        element: ElementId,
        expected: &'static str,
        found: String,
    },

    #[error("{count} reactions exceeds the brute-force cap of {cap}")]
    TooManyReactions { count: usize, cap: usize },

    #[error("edge count {m} out of range for {n} nodes (max {max})")]
    EdgeCountOutOfRange { n: usize, m: u64, max: u64 },

    #[error("edge ({0}, {1}) has an endpoint outside [0, {2})")]
    EndpointOutOfRange(usize, usize, usize),

    #[error("no upward crossing of {0}")]
    NoTransition(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
