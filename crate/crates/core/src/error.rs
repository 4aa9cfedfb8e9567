use thiserror::Error;

use crate::ElementId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element {element} is outside the ground set of size {ground_size}")]
    ElementOutOfRange { element: ElementId, ground_size: usize },

    #[error("query is not a sorted duplicate-free set (offending position {position})")]
    NotASet { position: usize },

    #[error("malformed cost model `{0}`: expected `unit`, `linear` or `poly:p` with p >= 0")]
    CostModel(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("element {0} is a loop, so no partition into independent sets exists")]
    LoopElement(ElementId),

    #[error("ground set of size {n} exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid instance descriptor: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
