use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands live in different groups")]
    GroupMismatch,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("group order {order} exceeds the enumeration limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("depth {depth} exceeds the supported maximum {limit}")]
    DepthTooLarge { depth: usize, limit: usize },
    #[error("requested depth {requested} is below the current depth {depth}")]
    DepthTooSmall { depth: usize, requested: usize },
    #[error("not nowhere dense to depth {depth} at level {level}")]
    NotNowhereDense { level: usize, depth: usize },
    #[error("gap {given} is below the required {required}")]
    GapTooSmall { given: usize, required: usize },
    #[error("tree is not {k}-porous to its depth")]
    NotPorous { k: usize },
    #[error("cover word {index} has length {found}, schedule requires {expected}")]
    ScheduleMismatch { index: usize, expected: usize, found: usize },
    #[error("word violates the zero mask at coordinate {position}")]
    MaskViolation { position: usize },
    #[error("no mask-free run of length {run} starts in {from}..={limit}")]
    MaskStarved { from: usize, run: usize, limit: usize },
    #[error("window bound {window} too small, need at least {needed}")]
    WindowTooSmall { window: i64, needed: i64 },
    #[error("index {index} assigned twice")]
    IndexCollision { index: usize },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
