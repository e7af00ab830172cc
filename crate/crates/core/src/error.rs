use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported group family `{0}`")]
    UnsupportedFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("element {0} does not belong to the group")]
    ForeignElement(String),
    #[error("quotient does not refine the other: {0}")]
    NotRefinement(String),
    #[error("schedule is not a refinement chain at position {0}")]
    NotAChain(usize),
    #[error("eigenvalue clusters could not be separated after {retries} attempts")]
    DegenerateSplit { retries: usize },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("the zero element cannot be separated")]
    ZeroElement,
    #[error("operation not supported for {0}")]
    UnsupportedGroup(String),
    #[error("numerical precision failure: {0}")]
    Precision(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
