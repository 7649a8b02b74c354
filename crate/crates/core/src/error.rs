use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid character {0:?} in path word (expected N, E or whitespace)")]
    InvalidCharacter(char),
    #[error("empty path word")]
    EmptyWord,
    #[error("point ({0}, {1}) does not lie on the path")]
    PointNotOnPath(usize, usize),
    #[error("row {row} out of range 1..={rows}")]
    RowOutOfRange { row: usize, rows: usize },
    #[error("area vector is not weakly increasing")]
    NotWeaklyIncreasing,
    #[error("path is not weakly above the boundary in row {0}")]
    AboveViolation(usize),
    #[error("paths are bound to different boundary paths")]
    NuMismatch,
    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("cover generator produced a cycle")]
    CycleDetected,
    #[error("element not in poset")]
    ElementNotInPoset,
    #[error("map between posets is not a bijection")]
    MapNotBijective,
    #[error("path does not have maximal out-degree")]
    NotInMaxOutSet,
    #[error("path does not have maximal in-degree")]
    NotInMaxInSet,
    #[error("operation requires at least two east steps per row (m >= 2)")]
    MNotAtLeastTwo,
    #[error("boundary is not the staircase (NE)^k")]
    NotStaircaseNu,
    #[error("paths have different heights")]
    HeightMismatch,
    #[error("move is not defined at this row")]
    MoveUndefined,
    #[error("iteration index {index} out of range 0..{bound}")]
    IterationOutOfRange { index: usize, bound: usize },
    #[error("path is not in the embedded maximal in-degree set")]
    NotInEmbeddedMaxInSet,
    #[error("path is not an m-step path of the requested shape")]
    NotMDyckShape,
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
}
