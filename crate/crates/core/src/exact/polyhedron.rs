use super::{feasible, linalg, Halfspace, LinearSystem, Vector};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A closed convex polyhedron in halfspace representation. An empty
/// constraint list describes all of `R^n`; the empty set is representable
/// (and reported as dimension `-1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    ambient_dim: usize,
    halfspaces: Vec<Halfspace>,
}

impl Polyhedron {
    pub fn new(ambient_dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        for h in &halfspaces {
            if h.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: h.dim(),
                });
            }
        }
        Ok(Polyhedron {
            ambient_dim,
            halfspaces,
        })
    }

    pub fn full_space(ambient_dim: usize) -> Self {
        Polyhedron {
            ambient_dim,
            halfspaces: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn is_empty(&self) -> bool {
        !feasible(&self.halfspaces, &[], self.ambient_dim).expect("dimensions checked on construction")
    }

    pub fn contains_point(&self, x: &Vector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains(&self, other: &Polyhedron) -> Result<bool> {
        self.check_dim(other)?;
        for h in &self.halfspaces {
            if !subset_of_halfspace(&other.halfspaces, &[], other.ambient_dim, h) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_set(&self, other: &Polyhedron) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.check_dim(other)?;
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.extend(other.halfspaces.iter().cloned());
        Ok(Polyhedron {
            ambient_dim: self.ambient_dim,
            halfspaces,
        })
    }

    /// Dimension of the polyhedron; `-1` for the empty set, `n` for a
    /// full-dimensional body.
    pub fn dim(&self) -> i64 {
        if self.is_empty() {
            return -1;
        }
        let tight = self.implicit_equalities();
        let normals: Vec<Vector> = tight
            .iter()
            .map(|&i| self.halfspaces[i].normal.clone())
            .collect();
        self.ambient_dim as i64 - linalg::rank(&normals) as i64
    }

    /// A point in the relative interior: it satisfies every constraint that
    /// can be satisfied strictly, strictly.
    pub fn relative_interior_point(&self) -> Result<Vector> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let tight: BTreeSet<usize> = self.implicit_equalities().into_iter().collect();
        let mut system = LinearSystem::new(self.ambient_dim);
        for (i, h) in self.halfspaces.iter().enumerate() {
            if tight.contains(&i) {
                system.eq(h.normal.clone(), h.offset.clone());
            } else {
                system.gt(h.normal.clone(), h.offset.clone());
            }
        }
        Ok(system
            .solve()
            .expect("a nonempty polyhedron has a relative interior point"))
    }

    /// The affine hull, as a base point plus a canonical direction basis.
    pub fn affine_hull(&self) -> Result<AffineSubspace> {
        let base = self.relative_interior_point()?;
        let normals: Vec<Vector> = self
            .implicit_equalities()
            .into_iter()
            .map(|i| self.halfspaces[i].normal.clone())
            .collect();
        Ok(AffineSubspace {
            ambient_dim: self.ambient_dim,
            base,
            directions: linalg::null_space_basis(&normals, self.ambient_dim),
        })
    }

    /// Decides whether `self` is a face of `other`. The empty set and
    /// `other` itself count as faces. Every nonempty face of a halfspace
    /// representation arises by turning the constraints active at one of its
    /// relative interior points into equalities, so the test pins one such
    /// point down and compares.
    pub fn is_face_of(&self, other: &Polyhedron) -> Result<bool> {
        self.check_dim(other)?;
        if self.is_empty() {
            return Ok(true);
        }
        if !other.contains(self)? {
            return Ok(false);
        }
        let z = self.relative_interior_point()?;
        let active: Vec<Halfspace> = other
            .halfspaces
            .iter()
            .filter(|h| h.evaluate(&z).is_zero())
            .cloned()
            .collect();
        // other restricted to the active constraints must be inside self...
        for f in &self.halfspaces {
            if !subset_of_halfspace(&other.halfspaces, &active, self.ambient_dim, f) {
                return Ok(false);
            }
        }
        // ... and self must lie on every active hyperplane.
        for h in &active {
            let mut system = LinearSystem::new(self.ambient_dim);
            for g in &self.halfspaces {
                system.ge(g.normal.clone(), g.offset.clone());
            }
            system.gt(h.normal.clone(), h.offset.clone());
            if system.is_feasible() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All nonempty faces, ordered by their sets of tight constraints. The
    /// polyhedron itself is first; the empty face is not listed.
    pub fn faces(&self) -> Result<Vec<Polyhedron>> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let mut found: BTreeMap<Vec<usize>, Polyhedron> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let start = self.tight_closure(&[]);
        queue.push_back(start);
        while let Some(key) = queue.pop_front() {
            if found.contains_key(&key) {
                continue;
            }
            found.insert(key.clone(), self.face_for(&key));
            for j in 0..self.halfspaces.len() {
                if key.contains(&j) {
                    continue;
                }
                let mut with_j = key.clone();
                with_j.push(j);
                with_j.sort_unstable();
                let eqs: Vec<Halfspace> = with_j
                    .iter()
                    .map(|&i| self.halfspaces[i].clone())
                    .collect();
                if feasible(&self.halfspaces, &eqs, self.ambient_dim)? {
                    queue.push_back(self.tight_closure(&with_j));
                }
            }
        }
        Ok(found.into_values().collect())
    }

    /// Every constraint index forced to equality once the constraints in
    /// `pinned` are read as equalities.
    fn tight_closure(&self, pinned: &[usize]) -> Vec<usize> {
        let eqs: Vec<Halfspace> = pinned.iter().map(|&i| self.halfspaces[i].clone()).collect();
        (0..self.halfspaces.len())
            .filter(|&k| {
                subset_of_halfspace(
                    &self.halfspaces,
                    &eqs,
                    self.ambient_dim,
                    &self.halfspaces[k].flipped(),
                )
            })
            .collect()
    }

    fn implicit_equalities(&self) -> Vec<usize> {
        self.tight_closure(&[])
    }

    fn face_for(&self, tight: &[usize]) -> Polyhedron {
        let mut halfspaces = self.halfspaces.clone();
        for &i in tight {
            halfspaces.push(self.halfspaces[i].flipped());
        }
        Polyhedron {
            ambient_dim: self.ambient_dim,
            halfspaces,
        }
    }

    fn check_dim(&self, other: &Polyhedron) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// Whether the region `{constraints, equalities}` lies inside `inside`.
fn subset_of_halfspace(
    constraints: &[Halfspace],
    equalities: &[Halfspace],
    dim: usize,
    inside: &Halfspace,
) -> bool {
    let mut system = LinearSystem::new(dim);
    for h in constraints {
        system.ge(h.normal.clone(), h.offset.clone());
    }
    for h in equalities {
        system.eq(h.normal.clone(), h.offset.clone());
    }
    // Nothing may violate `inside`.
    system.gt(inside.normal.neg(), -inside.offset.clone());
    !system.is_feasible()
}

/// An affine subspace given by a base point and a direction basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSubspace {
    pub ambient_dim: usize,
    pub base: Vector,
    pub directions: Vec<Vector>,
}

impl AffineSubspace {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        let shifted = x.sub(&self.base);
        let mut rows = self.directions.clone();
        let base_rank = linalg::rank(&rows);
        rows.push(shifted);
        linalg::rank(&rows) == base_rank
    }
}
