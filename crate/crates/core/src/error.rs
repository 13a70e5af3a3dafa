use thiserror::Error;

use crate::lattice::Point;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("malformed grid input: {0}")]
    MalformedInput(String),
    #[error("{which} markers are not a permutation of 1..{size}")]
    NotAPermutation { which: char, size: usize },
    #[error("row {row} has its X and O markers in the same cell")]
    SameCellXO { row: usize },
    #[error("diagram has {components} components; a knot has exactly one")]
    MultiComponent { components: usize },
    #[error("grid size {0} is too small (need at least 2)")]
    SizeTooSmall(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("degenerate curve: only {corners} corners remain")]
    DegenerateCurve { corners: usize },
    #[error("consecutive corners {from:?} -> {to:?} are not axis-parallel")]
    NotAxisParallel { from: Point, to: Point },
    #[error("fold collision at {at:?}: {detail}")]
    FoldCollision { at: Point, detail: String },
    #[error("bridge for broken stick at x={x} collides with existing geometry at {at:?}")]
    ReconnectFailure { x: i64, at: Point },
    #[error("input is not in the expected form for this step: {0}")]
    UnexpectedInput(String),
    #[error("malformed lattice file: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("no regular projection found among the shear candidates")]
    NoRegularShear,
    #[error("diagram has more than one component")]
    MultiComponent,
    #[error("malformed polynomial: {0}")]
    MalformedPoly(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RopeError {
    #[error("lattice knot has a stick of length 0")]
    DegenerateKnot,
    #[error("sampling density {0} is below the minimum of 8 points per arc")]
    BadDensity(usize),
    #[error("malformed geometry document: {0}")]
    Malformed(String),
    #[error("pieces {first} and {second} come within {distance} of each other; the unit tube self-intersects")]
    ThinTube { first: usize, second: usize, distance: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("crossing number {0} is too small (need at least 3)")]
    CrossingTooSmall(u32),
    #[error("grid size {0} is too small (need at least 2)")]
    SizeTooSmall(u32),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Rope(#[from] RopeError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
