use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("invalid overlap fraction {0}: must lie in [0, 0.5)")]
    InvalidOverlap(f64),
    #[error("a grade scale needs at least 2 grades, got {0}")]
    InvalidScaleSize(usize),
    #[error("invalid grade scale: {0}")]
    InvalidScale(String),
    #[error("the classic rectangular model has no overlap (got fraction {0})")]
    OverlapNotAllowed(f64),
    #[error("scale mismatch: expected {expected} grades, got {actual}")]
    ScaleMismatch { expected: usize, actual: usize },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("cannot normalize: {0}")]
    Normalization(String),
    #[error("at least two groups required, got {0}")]
    TooFewGroups(usize),
    #[error("tie tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("no geometric oracle for the {0} model")]
    UnsupportedShape(String),
    #[error("regions overlap; the area integral would count shared parts once")]
    OverlappingRegions,
    #[error("graph has zero area")]
    EmptyGraph,
    #[error("grid resolution must be positive and finite, got {0}")]
    InvalidResolution(f64),
    #[error("parse error at {at}: {message}")]
    Parse { at: Location, message: String },
    #[error("{at}: unknown grade `{grade}`")]
    UnknownGrade { at: Location, grade: String },
    #[error("{at}: grades `{lo}` and `{hi}` are not adjacent")]
    NonAdjacentBoundary {
        at: Location,
        lo: String,
        hi: String,
    },
    #[error("{at}: negative count {count}")]
    NegativeCount { at: Location, count: f64 },
    #[error("{at}: duplicate entry for group `{group}`, grade `{grade}`")]
    DuplicateCell {
        at: Location,
        group: String,
        grade: String,
    },
    #[error("group `{0}` has boundary scores, which the classic model cannot place")]
    BoundaryNotAllowed(String),
}

/// Where in a dataset an input error was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// 1-based line of a CSV file.
    Line(u64),
    /// A group of a JSON dataset.
    Group(String),
    /// The document as a whole.
    Input,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(line) => write!(f, "line {line}"),
            Location::Group(id) => write!(f, "group `{id}`"),
            Location::Input => f.write_str("input"),
        }
    }
}
