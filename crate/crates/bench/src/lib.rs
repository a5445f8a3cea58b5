//! Shared fixtures for the benchmarks: central arrangements whose face
//! counts and coarsening counts are known, at sizes that exercise the hot
//! paths without exact-arithmetic blowups.

use coarsekit::exact::rat;
use coarsekit::{Arrangement, Hyperplane, Vector};

pub fn central(dim: usize, normals: &[&[i64]]) -> Arrangement {
    let hyperplanes = normals
        .iter()
        .map(|n| Hyperplane::new(Vector::from_ints(n), rat(0)).unwrap())
        .collect();
    Arrangement::new(dim, hyperplanes).unwrap()
}

/// Two orthogonal lines: four regions around a square polygon.
pub fn square_fan() -> Arrangement {
    central(2, &[&[1, 0], &[0, 1]])
}

/// Four lines through the origin: eight sectors.
pub fn octagon_fan() -> Arrangement {
    central(2, &[&[1, 0], &[0, 1], &[1, -1], &[1, 1]])
}

/// The rank-three braid arrangement in its essential coordinates:
/// 24 regions (one per ordering of four values), 36 wall crossings.
pub fn braid_fan() -> Arrangement {
    central(
        3,
        &[
            &[1, -1, 0],
            &[1, 0, -1],
            &[0, 1, -1],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
        ],
    )
}
