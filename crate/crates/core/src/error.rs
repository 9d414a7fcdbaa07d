use thiserror::Error;

use crate::ElementId;

/// Errors raised when a caller breaks the comparator contract or passes
/// parameters outside an algorithm's domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot compare element {0} with itself")]
    SelfComparison(ElementId),

    #[error("element id {id} is out of range for {n} elements")]
    OutOfRange { id: ElementId, n: usize },

    #[error("duplicate element id {0} in input")]
    DuplicateId(ElementId),

    #[error("input is empty")]
    Empty,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("oracle answered {winner} for the pair ({i}, {j})")]
    IllegalAnswer {
        i: ElementId,
        j: ElementId,
        winner: ElementId,
    },

    #[error("ordering is not a permutation of the {n} element ids")]
    NotAPermutation { n: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
