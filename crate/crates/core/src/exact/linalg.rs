//! Small exact linear algebra over the rationals: reduced row echelon form
//! and the handful of derived quantities (rank, row space, null space,
//! particular solutions) the geometry layers need. Everything here is
//! deterministic; pivots are always the first usable row for the leftmost
//! remaining column, so canonical bases come out the same on every run.

use super::{Rational, Vector};
use num_traits::{One, Zero};

/// Reduced row echelon form of the given rows. Returns the nonzero rows
/// (each with a leading one) together with their pivot columns, in column
/// order.
#[allow(clippy::needless_range_loop)] // cross-row updates need indexing
pub fn rref(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let cols = rows.first().map_or(0, Vector::dim);
    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for col in 0..cols {
        let Some(src) = (next_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, src);
        let inv = m[next_row][col].recip();
        for c in col..cols {
            let scaled = &m[next_row][c] * &inv;
            m[next_row][c] = scaled;
        }
        for r in 0..m.len() {
            if r != next_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &m[next_row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == m.len() {
            break;
        }
    }
    m.truncate(next_row);
    (m.into_iter().map(Vector::new).collect(), pivots)
}

pub fn rank(rows: &[Vector]) -> usize {
    rref(rows).1.len()
}

/// Canonical basis of the row space: the nonzero rows of the reduced row
/// echelon form.
pub fn row_space_basis(rows: &[Vector]) -> Vec<Vector> {
    rref(rows).0
}

/// Canonical basis of `{x : rows . x = 0}` in `R^dim`, one vector per free
/// column, ordered by free column index. Each basis vector has a one in its
/// free column.
pub fn null_space_basis(rows: &[Vector], dim: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = Vector::zero(dim);
        v.set(free, Rational::one());
        for (row, &p) in r.iter().zip(&pivots) {
            v.set(p, -row[free].clone());
        }
        basis.push(v);
    }
    basis
}

/// Solves the pure equality system `normal_i . x = rhs_i`. Returns the
/// canonical particular solution (free variables zero) or `None` when the
/// system is inconsistent. An empty system yields the origin.
pub fn solve_equalities(equalities: &[(Vector, Rational)], dim: usize) -> Option<Vector> {
    let augmented: Vec<Vector> = equalities
        .iter()
        .map(|(n, rhs)| {
            let mut coords = n.coords().to_vec();
            coords.push(rhs.clone());
            Vector::new(coords)
        })
        .collect();
    let (rows, pivots) = rref(&augmented);
    if pivots.contains(&dim) {
        return None;
    }
    let mut x = Vector::zero(dim);
    for (row, &p) in rows.iter().zip(&pivots) {
        x.set(p, row[dim].clone());
    }
    Some(x)
}
