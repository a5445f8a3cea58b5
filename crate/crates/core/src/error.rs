use thiserror::Error;

use crate::sign::SignVector;

/// Crate-wide error type. Most variants are precondition violations that a
/// caller can repair; none of them are panics in disguise.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("halfspace normal must be nonzero")]
    ZeroNormal,

    #[error("hyperplanes {first} and {second} define the same affine hyperplane")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("sign vector {sv} has length {}, arrangement has {expected} hyperplanes", sv.len())]
    SignLengthMismatch { sv: SignVector, expected: usize },

    #[error("sign vector {0} does not name a nonempty face of the arrangement")]
    NoSuchFace(SignVector),

    #[error("sign vector {0} does not name a region")]
    NotARegion(SignVector),

    #[error("polyhedron is empty")]
    EmptyPolyhedron,

    #[error("operation requires a face of codimension 2, got {0}")]
    NotCodimensionTwo(SignVector),

    #[error("face {0} lies on the boundary of the support")]
    FaceOnBoundary(SignVector),

    #[error("edge {a} -- {b} is not an edge of the adjacency graph")]
    EdgeOutsideGraph { a: SignVector, b: SignVector },

    #[error("the support of the complex is not convex")]
    NonConvexSupport,

    #[error("cell {index} is not full-dimensional (dimension {dim} in ambient dimension {ambient})")]
    NonFullDimensionalCell {
        index: usize,
        dim: i64,
        ambient: usize,
    },

    #[error("cells {first} and {second} have distinct dimensions {first_dim} and {second_dim}")]
    UnequalCellDimensions {
        first: usize,
        second: usize,
        first_dim: i64,
        second_dim: i64,
    },

    #[error("cells {first} and {second} overlap in a full-dimensional set")]
    OverlappingCells { first: usize, second: usize },

    #[error("the union of the cell's regions is not a polyhedron: its hull also covers {0}")]
    NonPolyhedralCell(SignVector),

    #[error("edge set violates the polygon property at polygon {polygon}: {reason}")]
    PolygonPropertyViolation { polygon: SignVector, reason: String },

    #[error("the first complex does not coarsen the second")]
    NotACoarsening,

    #[error("path is invalid at position {position}: {reason}")]
    InvalidPath { position: usize, reason: String },

    #[error("move cannot be applied at position {position}: {reason}")]
    InvalidMove { position: usize, reason: String },

    #[error("paths do not share endpoints")]
    EndpointMismatch,

    #[error("path is not reduced")]
    NotReduced,

    #[error("arrangement must be central (all offsets zero)")]
    NonCentralArrangement,

    #[error("covector set is not an oriented-matroid covector lattice: {0}")]
    InvalidCovectorSet(String),

    #[error("element index {0} is out of range for the ground set")]
    ElementOutOfRange(usize),

    #[error("covector {0} is not in the lattice")]
    NoSuchCovector(SignVector),

    #[error("generator {0} does not have full rank")]
    GeneratorNotFullRank(SignVector),

    #[error("member {index} has rank {rank}, which does not exceed the cutoff {cutoff}")]
    RankViolation { index: usize, rank: usize, cutoff: i64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
