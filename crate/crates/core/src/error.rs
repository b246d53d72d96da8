use thiserror::Error;

use crate::series::Monomial;
use crate::subset::SubsetSpec;

/// Errors raised by series construction, arithmetic and decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index tuple is not nondecreasing at position {position}")]
    UnsortedTuple { position: usize },

    #[error("natural index {index} is outside 1..={trunc}")]
    IndexOutOfRange { index: u32, trunc: u32 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("truncation {got} is too small, need at least {needed}")]
    TruncationTooSmall { needed: u32, got: u32 },

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("the coefficient base q must be nonzero")]
    ZeroBase,

    #[error("coefficient {coefficient} of {monomial} is not divisible by {divisor} while processing {set}")]
    NotDivisible {
        set: SubsetSpec,
        monomial: Monomial,
        coefficient: String,
        divisor: String,
    },

    #[error("elimination left a nonzero residual, e.g. {coefficient} * {monomial}")]
    NonzeroResidual {
        monomial: Monomial,
        coefficient: String,
    },

    #[error("relation {relation} is not present in {monomial}")]
    RelationNotPresent { relation: String, monomial: Monomial },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
