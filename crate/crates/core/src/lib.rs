//! Exact tools for hyperplane arrangements and coarsenings of polyhedral
//! complexes with convex support.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! there is no floating point anywhere, and every operation is deterministic,
//! so repeated runs produce identical answers byte for byte. The layers build
//! on each other roughly bottom-up:
//!
//! * [`exact`] — rational vectors, halfspaces, polyhedra, and a
//!   Fourier–Motzkin feasibility solver that also produces sample points.
//! * [`sign`] — sign vectors, the combinatorial fingerprint of a face
//!   relative to an arrangement (and, in [`om`], an abstract covector).
//! * [`arrangement`] — face enumeration, region adjacency, and the planar
//!   fans that sit around codimension-2 faces.
//! * [`complexes`] — polyhedral complexes, validity checking (full pairwise
//!   and the cheaper codimension-restricted variant), convex-support tests,
//!   and the coarsening relation.
//! * [`coarsening`] — the local polygon criteria that characterize edge sets
//!   of coarsenings, construction and exhaustive enumeration of coarsenings,
//!   and a combinatorial local-convexity test for unions of full-dimensional
//!   cells.
//! * [`paths`] — gallery paths between regions, braid/nil rewriting, and the
//!   constructive connectivity of reduced paths.
//! * [`om`] — covector lattices of oriented matroids and the abstract
//!   counterparts of the geometric operations above.

pub mod arrangement;
pub mod coarsening;
pub mod complexes;
mod error;
pub mod exact;
pub mod om;
pub mod paths;
pub mod sign;

pub use arrangement::{AdjacencyGraph, Arrangement, Edge, Hyperplane, PlanarFan, Polygon};
pub use coarsening::{EdgeSet, PolygonRuling, PolygonVerdict, TietzeOutcome, TietzeWitness};
pub use complexes::{ArrangementComplex, GeneralComplex, ValidationReport, Violation};
pub use error::{Error, Result};
pub use exact::{AffineSubspace, Halfspace, Polyhedron, Rational, Vector};
pub use om::{Covector, OmConstraint, OmLattice, OmPolyhedron};
pub use paths::{GalleryPath, Move, MoveKind, MoveLog};
pub use sign::{Sign, SignVector};
