//! Hyperplane arrangements and their face combinatorics.
//!
//! An [`Arrangement`] is a finite list of affine hyperplanes in `R^n`. Its
//! faces are the nonempty sign patterns: assign `+`, `0`, or `-` to every
//! hyperplane and keep the assignments whose open cell is nonempty. Regions
//! are the zero-free faces. On top of that this module builds the dual
//! adjacency graph (regions joined when they share a wall) and, at every
//! face of codimension two, the local two-dimensional picture: a
//! [`PlanarFan`] of rays and sectors whose ring of surrounding regions is a
//! [`Polygon`]. Those polygons are the combinatorial heart of the coarsening
//! criteria in the rest of the crate.
//!
//! Everything is computed exactly and deterministically. Faces come out in
//! lexicographic sign order (`+` < `0` < `-`), fans are walked
//! counterclockwise in a canonical frame, and polygons are rotated to start
//! at their smallest region.

use crate::error::{Error, Result};
use crate::exact::{
    canonical_positive_scale, linalg, rational_string, LinearSystem, Polyhedron, Rational, Vector,
};
use crate::exact::Halfspace;
use crate::sign::{Sign, SignVector};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

/// The affine hyperplane `normal . x = offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vector,
    #[serde(with = "rational_string")]
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(Hyperplane { normal, offset })
    }

    /// Signed evaluation `normal . x - offset`.
    pub fn evaluate(&self, x: &Vector) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    /// Key identifying the hyperplane up to nonzero rescaling.
    pub fn canonical_key(&self) -> (Vector, Rational) {
        let (n, o) = canonical_positive_scale(&self.normal, &self.offset);
        match n.iter().find(|c| !c.is_zero()) {
            Some(lead) if lead < &Rational::zero() => (n.neg(), -o),
            _ => (n, o),
        }
    }

    /// The closed halfspace on the `sign` side. `sign` must be nonzero.
    pub fn halfspace(&self, sign: Sign) -> Halfspace {
        debug_assert_ne!(sign, Sign::Zero);
        let h = Halfspace {
            normal: self.normal.clone(),
            offset: self.offset.clone(),
        };
        match sign {
            Sign::Minus => h.flipped(),
            _ => h,
        }
    }
}

/// A finite hyperplane arrangement in `R^dim`, with hyperplanes indexed by
/// their position in the input list. Duplicate hyperplanes (equal up to
/// rescaling) are rejected so that walls and polygon edges are unambiguous.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "ArrangementData", into = "ArrangementData")]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    face_cache: OnceLock<Vec<SignVector>>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementData {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl TryFrom<ArrangementData> for Arrangement {
    type Error = Error;
    fn try_from(data: ArrangementData) -> Result<Self> {
        Arrangement::new(data.dim, data.hyperplanes)
    }
}

impl From<Arrangement> for ArrangementData {
    fn from(a: Arrangement) -> Self {
        ArrangementData {
            dim: a.dim,
            hyperplanes: a.hyperplanes,
        }
    }
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.hyperplanes == other.hyperplanes
    }
}
impl Eq for Arrangement {}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let mut seen: BTreeMap<(Vector, Rational), usize> = BTreeMap::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.is_zero() {
                return Err(Error::ZeroNormal);
            }
            if h.normal.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: h.normal.dim(),
                });
            }
            if let Some(&first) = seen.get(&h.canonical_key()) {
                return Err(Error::DuplicateHyperplane { first, second: i });
            }
            seen.insert(h.canonical_key(), i);
        }
        Ok(Arrangement {
            dim,
            hyperplanes,
            face_cache: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    fn check_len(&self, sv: &SignVector) -> Result<()> {
        if sv.len() != self.hyperplanes.len() {
            return Err(Error::SignLengthMismatch {
                sv: sv.clone(),
                expected: self.hyperplanes.len(),
            });
        }
        Ok(())
    }

    /// The sign pattern of a point.
    pub fn sign_vector_of(&self, x: &Vector) -> Result<SignVector> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(SignVector::new(
            self.hyperplanes
                .iter()
                .map(|h| Sign::of(&h.evaluate(x)))
                .collect(),
        ))
    }

    /// The open cell of a sign pattern, as a feasibility system.
    fn open_system(&self, sv: &SignVector) -> LinearSystem {
        let mut system = LinearSystem::new(self.dim);
        for (h, s) in self.hyperplanes.iter().zip(sv.iter()) {
            match s {
                Sign::Plus => system.gt(h.normal.clone(), h.offset.clone()),
                Sign::Minus => system.gt(h.normal.neg(), -h.offset.clone()),
                Sign::Zero => system.eq(h.normal.clone(), h.offset.clone()),
            }
        }
        system
    }

    /// The closed polyhedron of a sign pattern (closure of the open cell).
    pub fn face_polyhedron(&self, sv: &SignVector) -> Result<Polyhedron> {
        self.check_len(sv)?;
        let mut halfspaces = Vec::new();
        for (h, s) in self.hyperplanes.iter().zip(sv.iter()) {
            match s {
                Sign::Plus => halfspaces.push(h.halfspace(Sign::Plus)),
                Sign::Minus => halfspaces.push(h.halfspace(Sign::Minus)),
                Sign::Zero => {
                    halfspaces.push(h.halfspace(Sign::Plus));
                    halfspaces.push(h.halfspace(Sign::Minus));
                }
            }
        }
        Polyhedron::new(self.dim, halfspaces)
    }

    /// All faces, in lexicographic sign order. Computed once and cached.
    pub fn faces(&self) -> &[SignVector] {
        self.face_cache.get_or_init(|| {
            let mut out = Vec::new();
            let mut prefix = Vec::with_capacity(self.hyperplanes.len());
            self.extend_faces(&mut prefix, &mut out);
            out
        })
    }

    fn extend_faces(&self, prefix: &mut Vec<Sign>, out: &mut Vec<SignVector>) {
        // Prune on the closed relaxation of the prefix: adding hyperplanes
        // only shrinks cells, and the strict prefix system is infeasible
        // exactly when no completion of it is a face.
        let mut system = LinearSystem::new(self.dim);
        for (h, &s) in self.hyperplanes.iter().zip(prefix.iter()) {
            match s {
                Sign::Plus => system.gt(h.normal.clone(), h.offset.clone()),
                Sign::Minus => system.gt(h.normal.neg(), -h.offset.clone()),
                Sign::Zero => system.eq(h.normal.clone(), h.offset.clone()),
            }
        }
        if !system.is_feasible() {
            return;
        }
        if prefix.len() == self.hyperplanes.len() {
            out.push(SignVector::new(prefix.clone()));
            return;
        }
        for s in [Sign::Plus, Sign::Zero, Sign::Minus] {
            prefix.push(s);
            self.extend_faces(prefix, out);
            prefix.pop();
        }
    }

    pub fn face_exists(&self, sv: &SignVector) -> Result<bool> {
        self.check_len(sv)?;
        Ok(self.faces().binary_search(sv).is_ok())
    }

    /// The zero-free faces, in lexicographic sign order.
    pub fn regions(&self) -> Vec<SignVector> {
        self.faces()
            .iter()
            .filter(|f| f.is_zero_free())
            .cloned()
            .collect()
    }

    /// Dimension of a face: ambient dimension minus the rank of the normals
    /// active on it.
    pub fn face_dim(&self, sv: &SignVector) -> Result<i64> {
        if !self.face_exists(sv)? {
            return Err(Error::NoSuchFace(sv.clone()));
        }
        let normals: Vec<Vector> = sv
            .zeros()
            .into_iter()
            .map(|i| self.hyperplanes[i].normal.clone())
            .collect();
        Ok(self.dim as i64 - linalg::rank(&normals) as i64)
    }

    /// A point in the open cell of the face.
    pub fn interior_point(&self, sv: &SignVector) -> Result<Vector> {
        self.check_len(sv)?;
        self.open_system(sv)
            .solve()
            .ok_or_else(|| Error::NoSuchFace(sv.clone()))
    }

    /// A common point of all hyperplanes, if they share one.
    pub fn common_point(&self) -> Option<Vector> {
        let eqs: Vec<(Vector, Rational)> = self
            .hyperplanes
            .iter()
            .map(|h| (h.normal.clone(), h.offset.clone()))
            .collect();
        linalg::solve_equalities(&eqs, self.dim)
    }

    /// The region adjacency graph on a set of regions: regions joined when
    /// they differ in exactly one sign, labeled by that hyperplane. With all
    /// regions as support this is the dual graph of the arrangement.
    pub fn graph(&self, support: &BTreeSet<SignVector>) -> Result<AdjacencyGraph> {
        for r in support {
            self.check_region(r)?;
        }
        let regions: Vec<SignVector> = support.iter().cloned().collect();
        let mut edges = BTreeMap::new();
        for (i, a) in regions.iter().enumerate() {
            for b in regions.iter().skip(i + 1) {
                let sep = a.separation(b);
                if sep.len() == 1 {
                    edges.insert(Edge::new(a.clone(), b.clone()), sep[0]);
                }
            }
        }
        Ok(AdjacencyGraph { regions, edges })
    }

    pub fn full_graph(&self) -> AdjacencyGraph {
        let support: BTreeSet<SignVector> = self.regions().into_iter().collect();
        self.graph(&support).expect("regions of the arrangement are valid support")
    }

    fn check_region(&self, sv: &SignVector) -> Result<()> {
        if !self.face_exists(sv)? || !sv.is_zero_free() {
            return Err(Error::NotARegion(sv.clone()));
        }
        Ok(())
    }

    /// Faces of codimension two all of whose surrounding regions belong to
    /// `support`, in lexicographic sign order.
    pub fn interior_codim2_faces(&self, support: &BTreeSet<SignVector>) -> Result<Vec<SignVector>> {
        for r in support {
            self.check_region(r)?;
        }
        let regions = self.regions();
        let mut out = Vec::new();
        for f in self.faces() {
            if f.is_zero_free() {
                continue;
            }
            if self.face_dim(f)? != self.dim as i64 - 2 {
                continue;
            }
            let surrounding: Vec<&SignVector> =
                regions.iter().filter(|r| f.leq(r)).collect();
            if surrounding.iter().all(|r| support.contains(r)) {
                out.push(f.clone());
            }
        }
        Ok(out)
    }

    /// The local two-dimensional fan at a codimension-two face.
    pub fn planar_fan(&self, center: &SignVector) -> Result<PlanarFan> {
        if !self.face_exists(center)? {
            return Err(Error::NoSuchFace(center.clone()));
        }
        let zeros = center.zeros();
        let normals: Vec<Vector> = zeros
            .iter()
            .map(|&i| self.hyperplanes[i].normal.clone())
            .collect();
        if linalg::rank(&normals) != 2 {
            return Err(Error::NotCodimensionTwo(center.clone()));
        }
        let frame = linalg::row_space_basis(&normals);
        let (u, v) = (&frame[0], &frame[1]);
        // Each active hyperplane cuts the frame plane in a line through the
        // origin; distinct hyperplanes give distinct lines because a
        // projected normal together with the face's affine hull determines
        // the hyperplane.
        let projected: Vec<(usize, Vector)> = zeros
            .iter()
            .map(|&i| {
                let a = &self.hyperplanes[i].normal;
                (i, Vector::new(vec![a.dot(u), a.dot(v)]))
            })
            .collect();
        let mut rays: Vec<(Vector, usize)> = Vec::new();
        for (h, n) in &projected {
            let r = Vector::new(vec![-n[1].clone(), n[0].clone()]).primitive();
            rays.push((r.neg(), *h));
            rays.push((r, *h));
        }
        rays.sort_by(|a, b| angular_order(&a.0, &b.0));
        let m2 = rays.len();
        debug_assert!(m2 >= 4 && m2.is_multiple_of(2));
        for j in 0..m2 / 2 {
            debug_assert_eq!(rays[j].0.neg(), rays[j + m2 / 2].0, "local fan must be central");
        }
        let mut regions = Vec::with_capacity(m2);
        for j in 0..m2 {
            let mid = rays[j].0.add(&rays[(j + 1) % m2].0);
            let mut sv = center.clone();
            for (h, n) in &projected {
                let s = Sign::of(&n.dot(&mid));
                debug_assert_ne!(s, Sign::Zero, "sector midpoint lies on a ray");
                sv.set(*h, s);
            }
            regions.push(sv);
        }
        Ok(PlanarFan {
            center: center.clone(),
            rays: rays.iter().map(|(r, _)| r.clone()).collect(),
            ray_hyperplanes: rays.iter().map(|(_, h)| *h).collect(),
            regions,
        })
    }

    /// The polygons of a complex on `support`: one per interior
    /// codimension-two face, canonicalized, sorted by center.
    pub fn polygons(&self, support: &BTreeSet<SignVector>) -> Result<Vec<Polygon>> {
        self.interior_codim2_faces(support)?
            .into_iter()
            .map(|center| Ok(self.planar_fan(&center)?.polygon()))
            .collect()
    }

    pub fn all_polygons(&self) -> Result<Vec<Polygon>> {
        let support: BTreeSet<SignVector> = self.regions().into_iter().collect();
        self.polygons(&support)
    }
}

/// Counterclockwise angular order on nonzero plane vectors, starting at the
/// positive x-axis.
fn angular_order(a: &Vector, b: &Vector) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let half = |w: &Vector| -> u8 {
        let (x, y) = (&w[0], &w[1]);
        if y > &Rational::zero() || (y.is_zero() && x > &Rational::zero()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        if cross > Rational::zero() {
            Ordering::Less
        } else if cross < Rational::zero() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// The fan of sectors around a codimension-two face, in its canonical
/// two-dimensional frame. Rays are primitive vectors in counterclockwise
/// order; sector `j` spans `rays[j]` to `rays[j + 1]` and is occupied by
/// `regions[j]`. Rays of a fan around an interior face come in antipodal
/// pairs: `rays[j + m] == -rays[j]` where `2m` is the number of rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarFan {
    pub center: SignVector,
    pub rays: Vec<Vector>,
    /// For each ray, the hyperplane whose cut line contains it.
    pub ray_hyperplanes: Vec<usize>,
    pub regions: Vec<SignVector>,
}

impl PlanarFan {
    /// Number of lines: half the number of rays.
    pub fn line_count(&self) -> usize {
        self.rays.len() / 2
    }

    /// The edge crossed between sector `j` and sector `j + 1` (the shared
    /// ray is `rays[j + 1]`).
    pub fn edge(&self, j: usize) -> Edge {
        let m2 = self.regions.len();
        Edge::new(self.regions[j].clone(), self.regions[(j + 1) % m2].clone())
    }

    /// The surrounding ring of regions as a canonical polygon.
    pub fn polygon(&self) -> Polygon {
        Polygon::from_cycle(self.center.clone(), self.regions.clone())
    }
}

/// An unordered pair of adjacent regions, stored with the lexicographically
/// smaller endpoint first. Serialized as a two-element array of sign
/// strings; order on input does not matter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge(SignVector, SignVector);

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (a, b) = <(SignVector, SignVector)>::deserialize(d)?;
        Ok(Edge::new(a, b))
    }
}

impl Edge {
    pub fn new(a: SignVector, b: SignVector) -> Edge {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(&self) -> &SignVector {
        &self.0
    }

    pub fn hi(&self) -> &SignVector {
        &self.1
    }

    pub fn endpoints(&self) -> (&SignVector, &SignVector) {
        (&self.0, &self.1)
    }

    pub fn other(&self, side: &SignVector) -> Option<&SignVector> {
        if side == &self.0 {
            Some(&self.1)
        } else if side == &self.1 {
            Some(&self.0)
        } else {
            None
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// The ring of regions around an interior codimension-two face.
/// `cycle[j]` and `cycle[j + 1]` (cyclically) are adjacent; `edges[j]` is
/// that edge. The cycle starts at its lexicographically smallest region and
/// proceeds toward the smaller of that region's two neighbors, which makes
/// equal polygons compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Polygon {
    pub center: SignVector,
    pub cycle: Vec<SignVector>,
    pub edges: Vec<Edge>,
}

impl Polygon {
    pub fn from_cycle(center: SignVector, cycle: Vec<SignVector>) -> Polygon {
        let n = cycle.len();
        let start = (0..n)
            .min_by_key(|&i| &cycle[i])
            .expect("polygon cycle is nonempty");
        let forward = cycle[(start + 1) % n] <= cycle[(start + n - 1) % n];
        let canonical: Vec<SignVector> = (0..n)
            .map(|k| {
                let idx = if forward {
                    (start + k) % n
                } else {
                    (start + n - k) % n
                };
                cycle[idx].clone()
            })
            .collect();
        let edges = (0..n)
            .map(|j| Edge::new(canonical[j].clone(), canonical[(j + 1) % n].clone()))
            .collect();
        Polygon {
            center,
            cycle: canonical,
            edges,
        }
    }

    /// Number of edges (and regions) of the polygon.
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }
}

/// Regions of a complex and the walls between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    regions: Vec<SignVector>,
    edges: BTreeMap<Edge, usize>,
}

impl AdjacencyGraph {
    pub fn regions(&self) -> &[SignVector] {
        &self.regions
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Edge, usize)> {
        self.edges.iter().map(|(e, &h)| (e, h))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains_key(e)
    }

    /// The hyperplane crossed by an edge.
    pub fn wall_of(&self, e: &Edge) -> Option<usize> {
        self.edges.get(e).copied()
    }

    pub fn neighbors<'a>(&'a self, r: &'a SignVector) -> impl Iterator<Item = &'a SignVector> {
        self.edges.keys().filter_map(move |e| e.other(r))
    }

    /// Whether the graph is connected (an empty graph counts as connected).
    pub fn is_connected(&self) -> bool {
        let Some(first) = self.regions.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([first.clone()]);
        let mut stack = vec![first.clone()];
        while let Some(r) = stack.pop() {
            for n in self.neighbors(&r) {
                if seen.insert(n.clone()) {
                    stack.push(n.clone());
                }
            }
        }
        seen.len() == self.regions.len()
    }
}
