use thiserror::Error;

use crate::ordering::CaseId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty level sequence")]
    EmptySequence,
    #[error("root level must be 1, found {0}")]
    BadRoot(u32),
    /// `index` is 1-based.
    #[error("invalid level {level} at index {index} (previous level {prev})")]
    BadStep { index: usize, level: u32, prev: u32 },
    #[error("the one-vertex tree has no parent")]
    NoParent,
    #[error("child index {index} out of range 1..={max}")]
    ChildOutOfRange { index: u32, max: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size mismatch: {left} vs {right} vertices")]
    SizeMismatch { left: usize, right: usize },
    #[error("copying is only defined for distinct trees")]
    IdenticalTrees,
    #[error("not adjacent")]
    NotAdjacent,
    #[error("invalid delta: {0}")]
    InvalidDelta(String),
    #[error("{tree} is not a child of {parent}")]
    NotAChild { tree: String, parent: String },
    #[error("case exhaustion at {current} -> {next}")]
    CaseExhaustion { current: String, next: String },
    #[error("forbidden case {case} at {current} -> {next}")]
    ForbiddenCase {
        case: CaseId,
        current: String,
        next: String,
    },
    #[error("adjacency violation in case {case}: {left} -> {right}")]
    AdjacencyViolation {
        case: CaseId,
        left: String,
        right: String,
    },
    #[error("size must be at least {min}, got {n}")]
    SizeTooSmall { n: usize, min: usize },
    #[error("n = {n} exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}
