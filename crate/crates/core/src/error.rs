use thiserror::Error;

use crate::lattice::LatticeKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("unknown lattice name {0:?} (expected square|hex|tri|cubic)")]
    UnknownLattice(String),
    #[error("invalid cell {cell:?} for lattice {kind}")]
    InvalidCell { kind: LatticeKind, cell: (i64, i64, i64) },
    #[error("lattice mismatch: expected {expected}, got {got}")]
    LatticeMismatch { expected: LatticeKind, got: LatticeKind },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyformError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("polyform must be non-empty")]
    Empty,
    #[error("operation requires a tree polyform (induced graph has a cycle or is disconnected)")]
    NotATree,
    #[error("cell {0:?} is not part of the polyform")]
    CellNotPresent((i64, i64, i64)),
    #[error("operation requires a connected polyform")]
    NotConnected,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeafFnError {
    #[error("leaf function requires n >= 2, got {0}")]
    DomainTooSmall(i64),
    #[error("saturation check requires a tree polyform")]
    NotATree,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("size must be >= 1")]
    SizeZero,
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),
    #[error(transparent)]
    Polyform(#[from] PolyformError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraftError {
    #[error("rooted polycube must live on the cubic lattice")]
    NotCubic,
    #[error("rooted polycube needs at least two cells")]
    TooSmall,
    #[error("root {0:?} is not a cell of the tree")]
    RootNotPresent((i64, i64, i64)),
    #[error("direction {0:?} is not a unit vector")]
    NotUnitDirection((i64, i64, i64)),
    #[error("root is not adjacent to any leaf")]
    RootNotNearLeaf,
    #[error("root + dir must be a leaf for a non-final rooted polycube")]
    DirectionNotLeaf,
    #[error(transparent)]
    Polyform(#[from] PolyformError),
    #[error("catalog is incomplete below size {0}; build it bottom-up first")]
    IncompleteCatalog(usize),
    #[error("family index must be >= 2, got {0}")]
    FamilyIndexTooSmall(i64),
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SaturatedError {
    #[error("expected a tree polyform")]
    NotATree,
    #[error("expected lattice {expected}, got {got}")]
    WrongLattice { expected: &'static str, got: LatticeKind },
    #[error("input is not saturated")]
    NotSaturated,
    #[error("half-size must be >= 1")]
    HalfSizeZero,
    #[error("not a 4-tree: {0}")]
    NotFourTree(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error(transparent)]
    Polyform(#[from] PolyformError),
}
