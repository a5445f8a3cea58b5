//! Oriented-matroid counterparts of the geometric machinery: covector
//! lattices, halfspaces and polyhedra inside them, faces and rank,
//! polytope recognition, coarsening, the pairwise validation shortcut,
//! and the local convexity test.
//!
//! Everything here is purely combinatorial. A lattice is just its set of
//! covectors, validated against the covector axioms on construction; all
//! other notions (halfspaces, polyhedra, faces, rank) are derived from
//! sign patterns and the face order, so the same code serves realizable
//! and non-realizable lattices alike. [`om_from_arrangement`] bridges from
//! central arrangements, whose face sign vectors are exactly the
//! covectors of a realizable lattice.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Edge};
use crate::coarsening::{circular_ruling, edge_classes, EdgeSet};
use crate::complexes::{ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::sign::{Sign, SignVector};

/// Sign vectors double as covectors; the coordinates are indexed by the
/// ground set.
pub type Covector = SignVector;

/// Why a candidate covector set fails the axioms. Each variant names the
/// witnesses that exhibit the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "witness", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// Two candidates of different lengths.
    UnequalLength { first: Covector, second: Covector },
    /// The all-zero covector is absent.
    MissingZero,
    /// Some ground element is zero in every covector.
    Loop { element: usize },
    /// The negation of this covector is absent.
    NegationMissing(Covector),
    /// The composition of the pair is absent.
    CompositionMissing { first: Covector, second: Covector },
    /// No covector eliminates `element` between the pair: none is zero at
    /// `element` while agreeing with the composition outside the pair's
    /// separation set.
    EliminationMissing {
        first: Covector,
        second: Covector,
        element: usize,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::UnequalLength { first, second } => {
                write!(f, "covectors {first} and {second} have different lengths")
            }
            AxiomViolation::MissingZero => write!(f, "the zero covector is missing"),
            AxiomViolation::Loop { element } => {
                write!(f, "element {element} is zero in every covector")
            }
            AxiomViolation::NegationMissing(x) => {
                write!(f, "the negation of {x} is missing")
            }
            AxiomViolation::CompositionMissing { first, second } => {
                write!(
                    f,
                    "the composition {} of {first} and {second} is missing",
                    first.compose(second)
                )
            }
            AxiomViolation::EliminationMissing {
                first,
                second,
                element,
            } => write!(
                f,
                "no covector eliminates element {element} between {first} and {second}"
            ),
        }
    }
}

/// Checks the covector axioms on a candidate set: the zero covector is
/// present, the set is closed under negation and composition, elimination
/// holds, and no ground element is a loop. Returns the first violation in
/// a deterministic scan order, or `None` when the set is a lattice.
pub fn validate_covector_set(cands: &BTreeSet<Covector>) -> Option<AxiomViolation> {
    let Some(first) = cands.iter().next() else {
        return Some(AxiomViolation::MissingZero);
    };
    let ground = first.len();
    for x in cands {
        if x.len() != ground {
            return Some(AxiomViolation::UnequalLength {
                first: first.clone(),
                second: x.clone(),
            });
        }
    }
    if !cands.iter().any(|x| x.is_zero()) {
        return Some(AxiomViolation::MissingZero);
    }
    for e in 0..ground {
        if cands.iter().all(|x| x.get(e) == Sign::Zero) {
            return Some(AxiomViolation::Loop { element: e });
        }
    }
    for x in cands {
        if !cands.contains(&x.negated()) {
            return Some(AxiomViolation::NegationMissing(x.clone()));
        }
    }
    for x in cands {
        for y in cands {
            if !cands.contains(&x.compose(y)) {
                return Some(AxiomViolation::CompositionMissing {
                    first: x.clone(),
                    second: y.clone(),
                });
            }
        }
    }
    for x in cands {
        for y in cands {
            let separation = x.separation(y);
            let composite = x.compose(y);
            for &e in &separation {
                let eliminated = cands.iter().any(|z| {
                    z.get(e) == Sign::Zero
                        && (0..ground)
                            .filter(|f| !separation.contains(f))
                            .all(|f| z.get(f) == composite.get(f))
                });
                if !eliminated {
                    return Some(AxiomViolation::EliminationMissing {
                        first: x.clone(),
                        second: y.clone(),
                        element: e,
                    });
                }
            }
        }
    }
    None
}

/// The big face lattice of an oriented matroid: its covectors under the
/// face order, with ranks precomputed as longest-chain lengths above the
/// zero covector. Construction validates the covector axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmLattice {
    ground_size: usize,
    covectors: Vec<Covector>,
    ranks: Vec<usize>,
    rank: usize,
}

impl OmLattice {
    pub fn new(covectors: impl IntoIterator<Item = Covector>) -> Result<Self> {
        let set: BTreeSet<Covector> = covectors.into_iter().collect();
        if let Some(violation) = validate_covector_set(&set) {
            return Err(Error::InvalidCovectorSet(violation.to_string()));
        }
        let ground_size = set.iter().next().expect("nonempty after validation").len();
        let covectors: Vec<Covector> = set.into_iter().collect();
        // Rank by longest chain: the face order strictly grows supports,
        // so processing by support size ascending sees all lower covers
        // first.
        let mut order: Vec<usize> = (0..covectors.len()).collect();
        order.sort_by_key(|&i| covectors[i].support().len());
        let mut ranks = vec![0usize; covectors.len()];
        for (pos, &i) in order.iter().enumerate() {
            for &j in &order[..pos] {
                if covectors[j] != covectors[i] && covectors[j].leq(&covectors[i]) {
                    ranks[i] = ranks[i].max(ranks[j] + 1);
                }
            }
        }
        let rank = ranks.iter().copied().max().unwrap_or(0);
        Ok(OmLattice {
            ground_size,
            covectors,
            ranks,
            rank,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// All covectors, in lexicographic sign order.
    pub fn covectors(&self) -> &[Covector] {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: &Covector) -> bool {
        self.covectors.binary_search(x).is_ok()
    }

    /// Rank of one covector: the length of a longest chain from the zero
    /// covector up to it.
    pub fn rank_of(&self, x: &Covector) -> Result<usize> {
        match self.covectors.binary_search(x) {
            Ok(i) => Ok(self.ranks[i]),
            Err(_) => Err(Error::NoSuchCovector(x.clone())),
        }
    }

    /// Rank of the lattice, attained by every tope.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The maximal covectors. With no loops these are exactly the
    /// zero-free ones: anything with a zero grows under composition with
    /// a covector nonzero there.
    pub fn topes(&self) -> impl Iterator<Item = &Covector> {
        self.covectors.iter().filter(|x| x.is_zero_free())
    }

    /// The same lattice with the listed ground elements negated in every
    /// covector.
    pub fn reoriented(&self, flips: &BTreeSet<usize>) -> Result<OmLattice> {
        if let Some(&e) = flips.iter().find(|&&e| e >= self.ground_size) {
            return Err(Error::ElementOutOfRange(e));
        }
        let flipped = self.covectors.iter().map(|x| {
            let mut y = x.clone();
            for &e in flips {
                y = y.flipped_at(e);
            }
            y
        });
        OmLattice::new(flipped)
    }

    /// The polyhedron carved out by the given halfspace constraints; no
    /// constraints yield the whole lattice.
    pub fn polyhedron(
        &self,
        constraints: impl IntoIterator<Item = OmConstraint>,
    ) -> Result<OmPolyhedron> {
        let mut constraints: Vec<OmConstraint> = constraints.into_iter().collect();
        constraints.sort();
        constraints.dedup();
        for c in &constraints {
            if c.element() >= self.ground_size {
                return Err(Error::ElementOutOfRange(c.element()));
            }
        }
        let members = self
            .covectors
            .iter()
            .filter(|x| {
                constraints
                    .iter()
                    .all(|c| matches!(x.get(c.element()), s if s == Sign::Zero || s == c.side()))
            })
            .cloned()
            .collect();
        Ok(OmPolyhedron {
            constraints,
            members,
        })
    }

    /// The closed halfspace of all covectors that are zero or `side` at
    /// `e`.
    pub fn halfspace(&self, e: usize, side: Sign) -> Result<OmPolyhedron> {
        self.polyhedron([OmConstraint::new(e, side)?])
    }

    /// The hyperplane at `e`: the intersection of its two closed sides.
    pub fn hyperplane(&self, e: usize) -> Result<OmPolyhedron> {
        self.polyhedron([
            OmConstraint::new(e, Sign::Plus)?,
            OmConstraint::new(e, Sign::Minus)?,
        ])
    }

    /// The whole lattice as a polyhedron (the empty intersection).
    pub fn full(&self) -> OmPolyhedron {
        self.polyhedron([]).expect("no constraints to reject")
    }

    /// The principal order ideal below a covector, as a polyhedron's
    /// member set would hold it.
    fn ideal(&self, x: &Covector) -> BTreeSet<Covector> {
        self.covectors
            .iter()
            .filter(|y| y.leq(x))
            .cloned()
            .collect()
    }

    /// Whether `low` is covered by `high` in the lattice.
    fn covers(&self, low: &Covector, high: &Covector) -> bool {
        low != high
            && low.leq(high)
            && match (self.rank_of(low), self.rank_of(high)) {
                (Ok(a), Ok(b)) => b == a + 1,
                _ => false,
            }
    }

    /// Whether a covector set induces a connected subgraph of the Hasse
    /// diagram. The empty set counts as connected.
    fn hasse_connected(&self, set: &BTreeSet<Covector>) -> bool {
        let Some(start) = set.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            for y in set {
                if !seen.contains(y) && (self.covers(&x, y) || self.covers(y, &x)) {
                    seen.insert(y.clone());
                    queue.push_back(y.clone());
                }
            }
        }
        seen.len() == set.len()
    }

    /// Boundary of a closed covector set (an order ideal): the members
    /// whose principal order filter in the lattice leaves the set.
    fn boundary(&self, set: &BTreeSet<Covector>) -> BTreeSet<Covector> {
        set.iter()
            .filter(|x| {
                self.covectors
                    .iter()
                    .any(|y| x.leq(y) && !set.contains(y))
            })
            .cloned()
            .collect()
    }
}

/// One closed-halfspace constraint: covectors must be zero or `side` at
/// element `e`. Serialized as `{"e": 0, "side": "+"}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ConstraintData", into = "ConstraintData")]
pub struct OmConstraint {
    e: usize,
    side: Sign,
}

#[derive(Serialize, Deserialize)]
struct ConstraintData {
    e: usize,
    side: String,
}

impl TryFrom<ConstraintData> for OmConstraint {
    type Error = Error;
    fn try_from(data: ConstraintData) -> Result<Self> {
        let side = match data.side.as_str() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => return Err(Error::Parse(format!("halfspace side {other:?} is not + or -"))),
        };
        OmConstraint::new(data.e, side)
    }
}

impl From<OmConstraint> for ConstraintData {
    fn from(c: OmConstraint) -> Self {
        ConstraintData {
            e: c.e,
            side: match c.side {
                Sign::Plus => "+".into(),
                _ => "-".into(),
            },
        }
    }
}

impl OmConstraint {
    pub fn new(e: usize, side: Sign) -> Result<Self> {
        if side == Sign::Zero {
            return Err(Error::Parse("halfspace side must be + or -".into()));
        }
        Ok(OmConstraint { e, side })
    }

    pub fn element(&self) -> usize {
        self.e
    }

    pub fn side(&self) -> Sign {
        self.side
    }
}

/// An intersection of closed halfspaces in a lattice: the defining
/// constraints plus the realized covector set. May be empty. Polyhedra
/// compare by realized set, since different constraint lists can carve
/// the same set.
#[derive(Debug, Clone, Serialize)]
#[serde(into = "PolyhedronData")]
pub struct OmPolyhedron {
    constraints: Vec<OmConstraint>,
    members: BTreeSet<Covector>,
}

#[derive(Serialize)]
struct PolyhedronData {
    halfspaces: Vec<OmConstraint>,
}

impl From<OmPolyhedron> for PolyhedronData {
    fn from(p: OmPolyhedron) -> Self {
        PolyhedronData {
            halfspaces: p.constraints,
        }
    }
}

impl PartialEq for OmPolyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for OmPolyhedron {}

impl OmPolyhedron {
    pub fn constraints(&self) -> &[OmConstraint] {
        &self.constraints
    }

    pub fn members(&self) -> &BTreeSet<Covector> {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Covector) -> bool {
        self.members.contains(x)
    }

    /// Intersection: constraints accumulate, members intersect.
    pub fn intersect(&self, other: &OmPolyhedron) -> OmPolyhedron {
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().copied());
        constraints.sort();
        constraints.dedup();
        OmPolyhedron {
            constraints,
            members: self.members.intersection(&other.members).cloned().collect(),
        }
    }

    /// The zero-free members, which are the maximal ones.
    pub fn topes(&self) -> impl Iterator<Item = &Covector> {
        self.members.iter().filter(|x| x.is_zero_free())
    }
}

/// The closure of a tope: the polyhedron pinned to the tope's side on
/// every element, whose members are exactly the order ideal below it.
pub fn tope_closure(l: &OmLattice, tope: &Covector) -> Result<OmPolyhedron> {
    if tope.len() != l.ground_size() || !tope.is_zero_free() || !l.contains(tope) {
        return Err(Error::NotARegion(tope.clone()));
    }
    let constraints = (0..l.ground_size())
        .map(|e| OmConstraint::new(e, tope.get(e)))
        .collect::<Result<Vec<_>>>()?;
    l.polyhedron(constraints)
}

/// The covector lattice of a central arrangement: its face sign vectors.
pub fn om_from_arrangement(arr: &Arrangement) -> Result<OmLattice> {
    if arr.hyperplanes().iter().any(|h| !h.offset.is_zero()) {
        return Err(Error::NonCentralArrangement);
    }
    OmLattice::new(arr.faces().iter().cloned())
}

/// Rank of a polyhedron: the largest covector rank among its members, or
/// `-1` when it is empty.
pub fn om_rank(l: &OmLattice, p: &OmPolyhedron) -> Result<i64> {
    let mut rank = -1i64;
    for x in &p.members {
        rank = rank.max(l.rank_of(x)? as i64);
    }
    Ok(rank)
}

/// The accessible faces of a nonempty polyhedron: its intersections with
/// hyperplanes it touches from one side, deduplicated by realized set.
pub fn accessible_faces(l: &OmLattice, p: &OmPolyhedron) -> Result<Vec<OmPolyhedron>> {
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let mut faces: Vec<OmPolyhedron> = Vec::new();
    for e in 0..l.ground_size() {
        let one_sided = [Sign::Plus, Sign::Minus]
            .iter()
            .any(|&s| p.members.iter().all(|x| x.get(e) == Sign::Zero || x.get(e) == s));
        if !one_sided {
            continue;
        }
        let face = p.intersect(&l.hyperplane(e)?);
        if !faces.iter().any(|f| f.members == face.members) {
            faces.push(face);
        }
    }
    Ok(faces)
}

/// All faces of a nonempty polyhedron: every intersection of accessible
/// faces, including the empty intersection (the polyhedron itself),
/// deduplicated and sorted by realized set.
pub fn om_faces(l: &OmLattice, p: &OmPolyhedron) -> Result<Vec<OmPolyhedron>> {
    let accessible = accessible_faces(l, p)?;
    let mut by_members: BTreeMap<BTreeSet<Covector>, OmPolyhedron> =
        BTreeMap::from([(p.members.clone(), p.clone())]);
    for a in &accessible {
        let existing: Vec<OmPolyhedron> = by_members.values().cloned().collect();
        for f in existing {
            let meet = f.intersect(a);
            by_members.entry(meet.members.clone()).or_insert(meet);
        }
    }
    Ok(by_members.into_values().collect())
}

/// Whether `face` is a face of `p`: it must equal the intersection of all
/// accessible faces of `p` that contain it.
fn is_om_face_of(l: &OmLattice, face: &OmPolyhedron, p: &OmPolyhedron) -> Result<bool> {
    debug_assert!(!face.is_empty());
    let mut meet = p.clone();
    for a in accessible_faces(l, p)? {
        if face.members.is_subset(&a.members) {
            meet = meet.intersect(&a);
        }
    }
    Ok(meet.members == face.members)
}

/// Decides whether the order ideal generated by full-rank covectors is a
/// polytope: between any two of its maximal covectors, every covector on
/// any shortest path through the rank-(n-1) and rank-n covectors must lie
/// in the ideal.
pub fn is_om_polytope(l: &OmLattice, generators: &BTreeSet<Covector>) -> Result<bool> {
    let n = l.rank();
    for g in generators {
        if l.rank_of(g)? != n {
            return Err(Error::GeneratorNotFullRank(g.clone()));
        }
    }
    let ideal: BTreeSet<Covector> = generators
        .iter()
        .flat_map(|g| l.ideal(g))
        .collect();
    // The graph of topes and subtopes, with cover edges.
    let upper: Vec<&Covector> = l
        .covectors
        .iter()
        .filter(|x| {
            let r = l.rank_of(x).expect("own covector");
            r + 1 >= n
        })
        .collect();
    let neighbors = |x: &Covector| -> Vec<&Covector> {
        upper
            .iter()
            .copied()
            .filter(|y| l.covers(x, y) || l.covers(y, x))
            .collect()
    };
    let distances = |from: &Covector| -> BTreeMap<&Covector, usize> {
        let mut dist = BTreeMap::new();
        let start = upper
            .iter()
            .copied()
            .find(|y| *y == from)
            .expect("generators are topes");
        dist.insert(start, 0usize);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x];
            for y in neighbors(x) {
                if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(y) {
                    slot.insert(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    };
    let maximal: Vec<&Covector> = generators.iter().collect();
    for (i, y) in maximal.iter().enumerate() {
        let from_y = distances(y);
        for z in maximal.iter().skip(i + 1) {
            let from_z = distances(z);
            let Some(&total) = from_y.get(*z) else {
                // Unreachable pairs have no shortest path to police.
                continue;
            };
            for x in &upper {
                let on_shortest = match (from_y.get(x), from_z.get(x)) {
                    (Some(&a), Some(&b)) => a + b == total,
                    _ => false,
                };
                if on_shortest && !ideal.contains(*x) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The tope-adjacency graph of a polyhedron's topes: two topes are
/// adjacent when they share a rank-(n-1) covector, and the map records
/// that shared wall.
pub fn om_tope_graph(l: &OmLattice, support: &OmPolyhedron) -> Result<BTreeMap<Edge, Covector>> {
    let n = l.rank();
    let topes: Vec<&Covector> = support.topes().collect();
    let mut graph = BTreeMap::new();
    for w in &l.covectors {
        if l.rank_of(w).expect("own covector") + 1 != n || !support.contains(w) {
            continue;
        }
        let above: Vec<&Covector> = topes.iter().copied().filter(|t| w.leq(t)).collect();
        if let [a, b] = above[..] {
            let edge = Edge::new(a.clone(), b.clone());
            let previous = graph.insert(edge, w.clone());
            debug_assert!(previous.is_none(), "tope pairs share at most one wall");
        }
    }
    Ok(graph)
}

/// The topes around an interior corank-2 covector, in cyclic order. The
/// interval above the covector is a rank-2 lattice, so its topes and
/// walls alternate around a circuit.
fn polygon_cycle(l: &OmLattice, center: &Covector) -> Vec<Covector> {
    let n = l.rank();
    let topes: Vec<&Covector> = l
        .covectors
        .iter()
        .filter(|t| l.rank_of(t).expect("own covector") == n && center.leq(t))
        .collect();
    let walls: Vec<&Covector> = l
        .covectors
        .iter()
        .filter(|w| l.rank_of(w).expect("own covector") + 1 == n && center.leq(w))
        .collect();
    let walls_of = |t: &Covector| -> Vec<&Covector> {
        walls.iter().copied().filter(|w| w.leq(t)).collect()
    };
    let start = topes.first().expect("interior faces have cofaces");
    let mut cycle: Vec<Covector> = vec![(*start).clone()];
    let first_walls = walls_of(start);
    debug_assert_eq!(first_walls.len(), 2, "rank-2 interval topes have two walls");
    let mut door = first_walls[0];
    loop {
        let current = cycle.last().expect("nonempty");
        let next = topes
            .iter()
            .copied()
            .find(|t| *t != current && door.leq(t))
            .expect("every wall separates two topes");
        if next == *start {
            break;
        }
        cycle.push(next.clone());
        door = walls_of(next)
            .into_iter()
            .find(|w| *w != door)
            .expect("rank-2 interval topes have two walls");
    }
    debug_assert_eq!(cycle.len(), topes.len());
    cycle
}

/// Interior corank-2 covectors of a support polyhedron: rank n-2 members
/// whose entire order filter stays in the support.
fn interior_corank2(l: &OmLattice, support: &OmPolyhedron) -> Vec<Covector> {
    let n = l.rank();
    support
        .members
        .iter()
        .filter(|x| {
            l.rank_of(x).expect("member of the lattice") + 2 == n
                && l.covectors
                    .iter()
                    .all(|y| !x.leq(y) || support.contains(y))
        })
        .cloned()
        .collect()
}

/// Shared validation for the coarsening entry points: support topes must
/// be the maximal members, and every edge must join adjacent topes.
fn validated_tope_graph(
    l: &OmLattice,
    support: &OmPolyhedron,
    edges: &EdgeSet,
) -> Result<BTreeMap<Edge, Covector>> {
    let topes: BTreeSet<&Covector> = support.topes().collect();
    for x in &support.members {
        if !topes.iter().any(|t| x.leq(t)) {
            return Err(Error::NotARegion(x.clone()));
        }
    }
    let graph = om_tope_graph(l, support)?;
    for edge in edges.iter() {
        if !graph.contains_key(edge) {
            return Err(Error::EdgeOutsideGraph {
                a: edge.lo().clone(),
                b: edge.hi().clone(),
            });
        }
    }
    Ok(graph)
}

/// The polygon property around every interior corank-2 covector, reusing
/// the circular criterion: per polygon, the erased-edge mask must merge
/// the cycle into arcs no wider than a halfplane, with the two-piece
/// exception for exact halfplanes.
fn polygon_failures(
    l: &OmLattice,
    support: &OmPolyhedron,
    edges: &EdgeSet,
) -> Result<Option<(Covector, crate::coarsening::PolygonRuling)>> {
    validated_tope_graph(l, support, edges)?;
    for center in interior_corank2(l, support) {
        let cycle = polygon_cycle(l, &center);
        let slots = cycle.len();
        let mut mask = 0u64;
        for j in 0..slots {
            let edge = Edge::new(cycle[j].clone(), cycle[(j + 1) % slots].clone());
            if edges.contains(&edge) {
                mask |= 1 << j;
            }
        }
        let ruling = circular_ruling(mask, slots);
        if !ruling.is_ok() {
            return Ok(Some((center, ruling)));
        }
    }
    Ok(None)
}

/// Whether the edge set has the polygon property over the support's tope
/// complex, which makes it the edge set of a coarsening.
pub fn om_coarsen_check(l: &OmLattice, support: &OmPolyhedron, edges: &EdgeSet) -> Result<bool> {
    Ok(polygon_failures(l, support, edges)?.is_none())
}

/// A coarsening assembled from an edge set: the tope classes and, for
/// each class, the polyhedron whose members are the closures of the
/// class topes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmCoarsening {
    pub classes: Vec<BTreeSet<Covector>>,
    pub cells: Vec<OmPolyhedron>,
}

/// Builds the coarsening for an edge set with the polygon property:
/// topes are merged along the edges, each merged class is realized as a
/// polyhedron, and the resulting cells are verified to intersect in
/// common faces.
pub fn om_build_coarsening(
    l: &OmLattice,
    support: &OmPolyhedron,
    edges: &EdgeSet,
) -> Result<OmCoarsening> {
    if let Some((polygon, ruling)) = polygon_failures(l, support, edges)? {
        return Err(Error::PolygonPropertyViolation {
            polygon,
            reason: ruling.to_string(),
        });
    }
    let topes: BTreeSet<Covector> = support.topes().cloned().collect();
    let classes = edge_classes(&topes, edges);
    let mut cells = Vec::with_capacity(classes.len());
    for class in &classes {
        let union: BTreeSet<Covector> = class.iter().flat_map(|t| l.ideal(t)).collect();
        let mut constraints = Vec::new();
        for e in 0..l.ground_size() {
            let mut signs = class.iter().map(|t| t.get(e));
            let first = signs.next().expect("classes are nonempty");
            if signs.all(|s| s == first) {
                constraints.push(OmConstraint::new(e, first)?);
            }
        }
        let cell = l.polyhedron(constraints)?;
        if cell.members != union {
            return Err(Error::NotACoarsening);
        }
        cells.push(cell);
    }
    let cutoff = l.rank() as i64 - 1;
    for (i, m) in cells.iter().enumerate() {
        for n in cells.iter().skip(i + 1) {
            let meet = m.intersect(n);
            if om_rank(l, &meet)? >= cutoff
                && !(is_om_face_of(l, &meet, m)? && is_om_face_of(l, &meet, n)?)
            {
                return Err(Error::NotACoarsening);
            }
        }
    }
    Ok(OmCoarsening { classes, cells })
}

/// The local convexity test: full-rank members whose support has a
/// connected interior and a supporting halfspace at every boundary
/// covector together guarantee that the support is a polyhedron.
pub fn om_tietze(l: &OmLattice, members: &[OmPolyhedron]) -> Result<bool> {
    let n = l.rank();
    for (index, m) in members.iter().enumerate() {
        if m.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let rank = om_rank(l, m)? as usize;
        if rank != n {
            return Err(Error::RankViolation {
                index,
                rank,
                cutoff: n as i64 - 1,
            });
        }
    }
    let support: BTreeSet<Covector> = members
        .iter()
        .flat_map(|m| m.members.iter().cloned())
        .collect();
    let boundary = l.boundary(&support);
    let interior: BTreeSet<Covector> = support.difference(&boundary).cloned().collect();
    if !l.hasse_connected(&interior) {
        return Ok(false);
    }
    for x in &boundary {
        let incident: Vec<&OmPolyhedron> =
            members.iter().filter(|m| m.contains(x)).collect();
        let supported = x.zeros().into_iter().any(|e| {
            [Sign::Plus, Sign::Minus].iter().any(|&s| {
                incident
                    .iter()
                    .all(|m| m.members.iter().all(|y| y.get(e) == Sign::Zero || y.get(e) == s))
            })
        });
        if !supported {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The pairwise validation shortcut: members of rank above `k` form a
/// complex (together with their faces) once local connectivity holds
/// above every support covector and every pairwise intersection of rank
/// above `k` is a face of both members.
pub fn om_shortcut_validate(
    l: &OmLattice,
    members: &[OmPolyhedron],
    k: i64,
) -> Result<ValidationReport> {
    for (index, m) in members.iter().enumerate() {
        let rank = om_rank(l, m)?;
        if rank <= k {
            return Err(Error::RankViolation {
                index,
                rank: rank.max(0) as usize,
                cutoff: k,
            });
        }
    }
    let support: BTreeSet<Covector> = members
        .iter()
        .flat_map(|m| m.members.iter().cloned())
        .collect();
    // The union of low-rank pairwise intersections, excluded from the
    // connectivity requirement.
    let mut low: BTreeSet<Covector> = BTreeSet::new();
    for (i, m) in members.iter().enumerate() {
        for n in members.iter().skip(i + 1) {
            let meet = m.intersect(n);
            if om_rank(l, &meet)? <= k {
                low.extend(meet.members.iter().cloned());
            }
        }
    }
    let mut violations = Vec::new();
    for x in &support {
        let above: BTreeSet<Covector> = support
            .iter()
            .filter(|y| x.leq(y) && !low.contains(*y))
            .cloned()
            .collect();
        if !l.hasse_connected(&above) {
            violations.push(Violation::InteriorDisconnected { above: x.clone() });
        }
    }
    for (i, m) in members.iter().enumerate() {
        for (j, n) in members.iter().enumerate().skip(i + 1) {
            let meet = m.intersect(n);
            if om_rank(l, &meet)? <= k {
                continue;
            }
            if !is_om_face_of(l, &meet, m)? {
                violations.push(Violation::IntersectionNotFaceOfFirst { first: i, second: j });
            }
            if !is_om_face_of(l, &meet, n)? {
                violations.push(Violation::IntersectionNotFaceOfSecond { first: i, second: j });
            }
        }
    }
    violations.sort();
    Ok(ValidationReport {
        ok: violations.is_empty(),
        violations,
    })
}
