//! Deciding, constructing, and enumerating coarsenings of a complex.
//!
//! A coarsening of a complex with convex support is determined by the set
//! of walls it erases: a subset `E` of adjacency edges is the edge set of a
//! coarsening exactly when, around every interior codimension-two face,
//! the merged groups of sectors still form a fan of convex cones. That
//! local test is [`check_polygon_property`]; [`build_coarsening`] turns a
//! passing edge set into the coarsened complex, and
//! [`enumerate_coarsenings`] walks all passing edge sets without
//! materializing the full power set of edges.
//!
//! The module also hosts [`tietze_check`], a local-to-global convexity
//! test for the support of a union of polyhedra: the support is convex
//! exactly when its interior is connected and every boundary face admits a
//! supporting halfspace.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::arrangement::{AdjacencyGraph, Edge, PlanarFan, Polygon};
use crate::complexes::{induced_support, ArrangementComplex, GeneralComplex};
use crate::error::{Error, Result};
use crate::exact::{rat, LinearSystem, Polyhedron, Vector};
use crate::sign::{Sign, SignVector};

/// A set of adjacency edges, the walls a coarsening erases.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct EdgeSet {
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new() -> EdgeSet {
        EdgeSet::default()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> EdgeSet {
        EdgeSet {
            edges: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// How one polygon judges an edge set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolygonRuling {
    /// The merged sector groups form a fan around this face.
    Ok,
    /// A merged group wraps around the face, or splits it into a halfplane
    /// facing more than one opposite piece; the groups cannot be the cells
    /// of any complex.
    ClosureViolated,
    /// A merged group spans an angle greater than a halfplane, so its
    /// union is not convex.
    MergedConeNotConvex,
}

impl PolygonRuling {
    pub fn is_ok(self) -> bool {
        self == PolygonRuling::Ok
    }
}

impl fmt::Display for PolygonRuling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            PolygonRuling::Ok => "ok",
            PolygonRuling::ClosureViolated => "merged sectors do not close up into a fan",
            PolygonRuling::MergedConeNotConvex => "a merged sector group is not convex",
        };
        f.write_str(text)
    }
}

/// The ruling of a single polygon on an edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonVerdict {
    pub polygon: Polygon,
    pub ruling: PolygonRuling,
}

impl PolygonVerdict {
    pub fn is_ok(&self) -> bool {
        self.ruling.is_ok()
    }
}

/// Judges a circular pattern of merged walls around a codimension-two
/// face. Bit `j` of `mask` says whether the wall between sector `j` and
/// sector `j + 1` (indices mod `slots`) is erased. Sound for any fan whose
/// rays come in antipodal pairs, so that a run of exactly `slots / 2`
/// sectors spans exactly a halfplane.
pub(crate) fn circular_ruling(mask: u64, slots: usize) -> PolygonRuling {
    assert!(
        (4..=64).contains(&slots) && slots.is_multiple_of(2),
        "a codimension-two fan has an even number of sectors, at least 4"
    );
    let m = slots / 2;
    let full = full_mask(slots);
    let mask = mask & full;
    if mask == full {
        // Everything merges into one cell with the face in its interior.
        return PolygonRuling::Ok;
    }
    let missing: Vec<usize> = (0..slots).filter(|j| mask & (1 << j) == 0).collect();
    let groups = missing.len();
    for (i, &p) in missing.iter().enumerate() {
        let q = missing[(i + 1) % groups];
        // Sectors p + 1 ..= q form one merged group.
        let span = (q + slots - p - 1) % slots + 1;
        if span == slots {
            // A single un-erased wall: the group wraps all the way around,
            // so its closure swallows the wall it was supposed to avoid.
            return PolygonRuling::ClosureViolated;
        }
        if span > m {
            return PolygonRuling::MergedConeNotConvex;
        }
        if span == m && groups != 2 {
            // A halfplane's only proper face is its full boundary line, so
            // it can only meet a single opposite halfplane, never two or
            // more groups sharing just a ray with it.
            return PolygonRuling::ClosureViolated;
        }
    }
    PolygonRuling::Ok
}

fn full_mask(slots: usize) -> u64 {
    if slots == 64 {
        u64::MAX
    } else {
        (1u64 << slots) - 1
    }
}

fn validated_graph(complex: &ArrangementComplex, edges: &EdgeSet) -> Result<AdjacencyGraph> {
    let graph = complex.graph();
    for e in edges.iter() {
        if !graph.contains_edge(e) {
            return Err(Error::EdgeOutsideGraph {
                a: e.lo().clone(),
                b: e.hi().clone(),
            });
        }
    }
    Ok(graph)
}

/// The fans at the interior codimension-two faces of the complex, each
/// paired with the mask of its walls that `edges` erases.
fn fan_masks(complex: &ArrangementComplex, edges: &EdgeSet) -> Result<Vec<(PlanarFan, u64)>> {
    let arr = complex.arrangement();
    let centers = arr.interior_codim2_faces(complex.regions())?;
    let mut out = Vec::with_capacity(centers.len());
    for center in centers {
        let fan = arr.planar_fan(&center)?;
        let slots = fan.regions.len();
        assert!(slots <= 64, "more than 32 hyperplanes through one face");
        let mut mask = 0u64;
        for j in 0..slots {
            if edges.contains(&fan.edge(j)) {
                mask |= 1 << j;
            }
        }
        out.push((fan, mask));
    }
    Ok(out)
}

/// Rules on `edges` at every interior codimension-two face of the
/// complex. The edge set is the edge set of a coarsening exactly when
/// every verdict is ok.
pub fn check_polygon_property(
    complex: &ArrangementComplex,
    edges: &EdgeSet,
) -> Result<Vec<PolygonVerdict>> {
    validated_graph(complex, edges)?;
    let verdicts = fan_masks(complex, edges)?
        .into_iter()
        .map(|(fan, mask)| PolygonVerdict {
            ruling: circular_ruling(mask, fan.regions.len()),
            polygon: fan.polygon(),
        })
        .collect();
    Ok(verdicts)
}

/// Whether every polygon of the complex accepts the edge set.
pub fn has_polygon_property(complex: &ArrangementComplex, edges: &EdgeSet) -> Result<bool> {
    Ok(check_polygon_property(complex, edges)?
        .iter()
        .all(PolygonVerdict::is_ok))
}

/// Whether no polygon has half of its edges consecutively erased without
/// all of them being erased. Implied by the polygon property; the
/// converse fails.
pub fn has_weak_polygon_property(complex: &ArrangementComplex, edges: &EdgeSet) -> Result<bool> {
    validated_graph(complex, edges)?;
    for (fan, mask) in fan_masks(complex, edges)? {
        let slots = fan.regions.len();
        let m = slots / 2;
        if mask == full_mask(slots) {
            continue;
        }
        for i in 0..slots {
            if (0..m).all(|t| mask & (1 << ((i + t) % slots)) != 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether, in every `2k`-gon, erasing `k - 1` consecutive edges forces
/// the `k - 1` opposite edges to be erased too. For fans whose rays come
/// in antipodal pairs this is equivalent to the polygon property.
pub fn has_zonotopal_polygon_property(
    complex: &ArrangementComplex,
    edges: &EdgeSet,
) -> Result<bool> {
    validated_graph(complex, edges)?;
    for (fan, mask) in fan_masks(complex, edges)? {
        let slots = fan.regions.len();
        let m = slots / 2;
        for i in 0..slots {
            let run = (0..m - 1).all(|t| mask & (1 << ((i + t) % slots)) != 0);
            let opposite = (0..m - 1).all(|t| mask & (1 << ((i + m + t) % slots)) != 0);
            if run && !opposite {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The classes of regions connected through the erased walls, ordered by
/// their smallest member. Singleton classes are included.
pub(crate) fn edge_classes(
    regions: &BTreeSet<SignVector>,
    edges: &EdgeSet,
) -> Vec<BTreeSet<SignVector>> {
    let mut adjacent: BTreeMap<&SignVector, Vec<&SignVector>> = BTreeMap::new();
    for e in edges.iter() {
        adjacent.entry(e.lo()).or_default().push(e.hi());
        adjacent.entry(e.hi()).or_default().push(e.lo());
    }
    let mut seen: BTreeSet<&SignVector> = BTreeSet::new();
    let mut classes = Vec::new();
    for r in regions {
        if seen.contains(r) {
            continue;
        }
        let mut class = BTreeSet::new();
        let mut stack = vec![r];
        seen.insert(r);
        while let Some(s) = stack.pop() {
            class.insert(s.clone());
            for &n in adjacent.get(s).into_iter().flatten() {
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        classes.push(class);
    }
    classes
}

/// Builds the coarsening whose cells merge the regions connected by
/// `edges`. Requires the complex to have convex support and the edge set
/// to pass [`check_polygon_property`]; each merged class is then a convex
/// polyhedron cut out by its boundary walls.
pub fn build_coarsening(complex: &ArrangementComplex, edges: &EdgeSet) -> Result<GeneralComplex> {
    if !complex.is_convex_support() {
        return Err(Error::NonConvexSupport);
    }
    if let Some(bad) = check_polygon_property(complex, edges)?
        .into_iter()
        .find(|v| !v.is_ok())
    {
        return Err(Error::PolygonPropertyViolation {
            polygon: bad.polygon.center,
            reason: bad.ruling.to_string(),
        });
    }
    let arr = complex.arrangement();
    let mut cells = Vec::new();
    for class in edge_classes(complex.regions(), edges) {
        let mut bounding = BTreeMap::new();
        for r in &class {
            for h in 0..arr.len() {
                let wall = r.with(h, Sign::Zero);
                if !arr.face_exists(&wall)? || class.contains(&r.flipped_at(h)) {
                    continue;
                }
                let halfspace = arr.hyperplanes()[h].halfspace(r.get(h));
                bounding.insert(halfspace.canonical_key(), halfspace);
            }
        }
        cells.push(Polyhedron::new(arr.dim(), bounding.into_values().collect())?);
    }
    GeneralComplex::from_cells(arr.dim(), cells)
}

/// The set of adjacency edges of `fine` whose two regions land in a
/// common cell of `coarse`. Fails with [`Error::NotACoarsening`] if some
/// region of `fine` is not contained in any cell of `coarse`.
pub fn edge_set_of(fine: &ArrangementComplex, coarse: &GeneralComplex) -> Result<EdgeSet> {
    let arr = fine.arrangement();
    if arr.dim() != coarse.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: arr.dim(),
            got: coarse.ambient_dim(),
        });
    }
    let mut home: BTreeMap<&SignVector, usize> = BTreeMap::new();
    for r in fine.regions() {
        let p = arr.face_polyhedron(r)?;
        let cell = coarse
            .cells()
            .iter()
            .position(|c| c.contains(&p).unwrap_or(false));
        match cell {
            Some(i) => home.insert(r, i),
            None => return Err(Error::NotACoarsening),
        };
    }
    Ok(fine
        .graph()
        .edges()
        .filter(|(e, _)| home[e.lo()] == home[e.hi()])
        .map(|(e, _)| e.clone())
        .collect())
}

struct PolygonSlots {
    /// Global edge indices of the polygon's walls, in fan order.
    edge_ids: Vec<usize>,
    /// All masks the polygon accepts, shared between polygons of equal
    /// size. Absent for outsized polygons, which are then only checked on
    /// complete assignments.
    accepted: Option<Rc<Vec<u64>>>,
}

struct Frame {
    edge: usize,
    include: bool,
    mark: usize,
}

/// Streaming enumeration of all edge sets of coarsenings of a complex,
/// in lexicographic order of their indicator strings over the sorted edge
/// list (so the empty set comes first and the full set last).
///
/// The search assigns one edge at a time, excluded before included, and
/// after each assignment narrows every touched polygon to the accepted
/// masks still compatible with the partial assignment; walls forced by
/// all remaining masks are assigned immediately, and a polygon with no
/// remaining mask prunes the branch.
pub struct Coarsenings {
    edges: Vec<Edge>,
    polygons: Vec<PolygonSlots>,
    edge_polygons: Vec<Vec<usize>>,
    assignment: Vec<Option<bool>>,
    poly_in: Vec<u64>,
    poly_out: Vec<u64>,
    trail: Vec<usize>,
    frames: Vec<Frame>,
    descending: bool,
    done: bool,
}

/// Enumerates the edge sets of all coarsenings of a complex with convex
/// support. The number of coarsenings can be exponential in the number of
/// edges; the iterator emits them one at a time.
pub fn enumerate_coarsenings(complex: &ArrangementComplex) -> Result<Coarsenings> {
    if !complex.is_convex_support() {
        return Err(Error::NonConvexSupport);
    }
    let graph = complex.graph();
    let edges: Vec<Edge> = graph.edges().map(|(e, _)| e.clone()).collect();
    let index: BTreeMap<&Edge, usize> = edges.iter().zip(0..).collect();
    let mut tables: BTreeMap<usize, Rc<Vec<u64>>> = BTreeMap::new();
    let mut polygons = Vec::new();
    let mut edge_polygons = vec![Vec::new(); edges.len()];
    for (fan, _) in fan_masks(complex, &EdgeSet::new())? {
        let slots = fan.regions.len();
        // 2^slots masks get enumerated once per size; past 20 bits that is
        // no longer worth a table and leaf checks take over.
        let accepted = (slots <= 20).then(|| {
            tables
                .entry(slots)
                .or_insert_with(|| {
                    Rc::new(
                        (0..=full_mask(slots))
                            .filter(|&mask| circular_ruling(mask, slots).is_ok())
                            .collect(),
                    )
                })
                .clone()
        });
        let pid = polygons.len();
        let mut edge_ids = Vec::with_capacity(slots);
        for j in 0..slots {
            let g = index[&fan.edge(j)];
            if !edge_polygons[g].contains(&pid) {
                edge_polygons[g].push(pid);
            }
            edge_ids.push(g);
        }
        polygons.push(PolygonSlots { edge_ids, accepted });
    }
    let poly_count = polygons.len();
    Ok(Coarsenings {
        assignment: vec![None; edges.len()],
        edges,
        polygons,
        edge_polygons,
        poly_in: vec![0; poly_count],
        poly_out: vec![0; poly_count],
        trail: Vec::new(),
        frames: Vec::new(),
        descending: true,
        done: false,
    })
}

impl Coarsenings {
    fn assign(&mut self, e: usize, value: bool) {
        debug_assert!(self.assignment[e].is_none());
        self.assignment[e] = Some(value);
        self.trail.push(e);
        self.stamp(e, value, true);
    }

    fn stamp(&mut self, e: usize, value: bool, on: bool) {
        for &pid in &self.edge_polygons[e] {
            let slots = &self.polygons[pid];
            let target = if value {
                &mut self.poly_in[pid]
            } else {
                &mut self.poly_out[pid]
            };
            for (j, &g) in slots.edge_ids.iter().enumerate() {
                if g == e {
                    if on {
                        *target |= 1 << j;
                    } else {
                        *target &= !(1 << j);
                    }
                }
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("trail length checked");
            let value = self.assignment[e].take().expect("trail entries are assigned");
            self.stamp(e, value, false);
        }
    }

    /// Assigns an edge and propagates everything it forces. On conflict
    /// returns false with the partial propagation still on the trail; the
    /// caller unwinds to its own mark.
    fn try_assign(&mut self, e: usize, value: bool) -> bool {
        let start = self.trail.len();
        self.assign(e, value);
        let mut idx = start;
        while idx < self.trail.len() {
            let cur = self.trail[idx];
            idx += 1;
            for pi in 0..self.edge_polygons[cur].len() {
                let pid = self.edge_polygons[cur][pi];
                if !self.narrow(pid) {
                    return false;
                }
            }
        }
        true
    }

    /// Re-scans one polygon's accepted masks against the current partial
    /// assignment, assigning any wall forced the same way by all of them.
    fn narrow(&mut self, pid: usize) -> bool {
        let Some(accepted) = self.polygons[pid].accepted.clone() else {
            return true;
        };
        let inm = self.poly_in[pid];
        let outm = self.poly_out[pid];
        let mut all = u64::MAX;
        let mut any = 0u64;
        let mut seen = false;
        for &mask in accepted.iter() {
            if mask & outm == 0 && mask & inm == inm {
                seen = true;
                all &= mask;
                any |= mask;
            }
        }
        if !seen {
            return false;
        }
        let slots = self.polygons[pid].edge_ids.len();
        let force_in = all & !inm;
        let force_out = !any & full_mask(slots) & !outm;
        for j in 0..slots {
            let g = self.polygons[pid].edge_ids[j];
            if force_in & (1 << j) != 0 && self.assignment[g].is_none() {
                self.assign(g, true);
            } else if force_out & (1 << j) != 0 && self.assignment[g].is_none() {
                self.assign(g, false);
            }
        }
        true
    }

    fn first_unassigned(&self) -> Option<usize> {
        self.assignment.iter().position(Option::is_none)
    }

    /// Final check for polygons too large for an accepted-mask table.
    fn leaf_ok(&self) -> bool {
        self.polygons
            .iter()
            .enumerate()
            .filter(|(_, p)| p.accepted.is_none())
            .all(|(pid, p)| circular_ruling(self.poly_in[pid], p.edge_ids.len()).is_ok())
    }

    fn snapshot(&self) -> EdgeSet {
        self.edges
            .iter()
            .zip(&self.assignment)
            .filter(|(_, a)| **a == Some(true))
            .map(|(e, _)| e.clone())
            .collect()
    }
}

impl Iterator for Coarsenings {
    type Item = EdgeSet;

    fn next(&mut self) -> Option<EdgeSet> {
        if self.done {
            return None;
        }
        loop {
            if self.descending {
                match self.first_unassigned() {
                    None => {
                        self.descending = false;
                        if self.leaf_ok() {
                            return Some(self.snapshot());
                        }
                    }
                    Some(e) => {
                        let mark = self.trail.len();
                        self.frames.push(Frame {
                            edge: e,
                            include: false,
                            mark,
                        });
                        if !self.try_assign(e, false) {
                            self.descending = false;
                        }
                    }
                }
            } else {
                let Some(top) = self.frames.last() else {
                    self.done = true;
                    return None;
                };
                let (edge, mark, include) = (top.edge, top.mark, top.include);
                self.undo_to(mark);
                if include {
                    self.frames.pop();
                } else {
                    self.frames.last_mut().expect("frame just read").include = true;
                    if self.try_assign(edge, true) {
                        self.descending = true;
                    }
                }
            }
        }
    }
}

/// Result of the local convexity test on the support of a union of cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TietzeOutcome {
    pub convex: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<TietzeWitness>,
}

/// Why the support failed the local convexity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TietzeWitness {
    /// The interior splits; one connected group of regions of the induced
    /// arrangement is listed.
    InteriorDisconnected { component: Vec<SignVector> },
    /// No halfspace supports the support at this face of the induced
    /// arrangement.
    NoSupportingHalfspace { face: SignVector },
}

/// Tests whether the union of the cells is convex using only local data:
/// the union of full-dimensional cells is convex exactly when its
/// interior is connected and every boundary face has a supporting
/// halfspace. The first failure in face order is returned as a witness.
pub fn tietze_check(cells: &[Polyhedron]) -> Result<TietzeOutcome> {
    if cells.is_empty() {
        return Ok(TietzeOutcome {
            convex: true,
            witness: None,
        });
    }
    let ambient = cells[0].ambient_dim();
    let (arr, coverage) = induced_support(ambient, cells)?;
    let support: BTreeSet<SignVector> = coverage.iter().flatten().cloned().collect();
    let graph = arr.graph(&support)?;
    if !graph.is_connected() {
        let seed = support.iter().next().expect("cells are nonempty").clone();
        let mut component = BTreeSet::from([seed.clone()]);
        let mut stack = vec![seed];
        while let Some(r) = stack.pop() {
            for n in graph.neighbors(&r) {
                if component.insert(n.clone()) {
                    stack.push(n.clone());
                }
            }
        }
        return Ok(TietzeOutcome {
            convex: false,
            witness: Some(TietzeWitness::InteriorDisconnected {
                component: component.into_iter().collect(),
            }),
        });
    }
    let all_regions = arr.regions();
    for face in arr.faces() {
        if face.is_zero_free() {
            continue;
        }
        let touches_in = support.iter().any(|r| face.leq(r));
        let touches_out = all_regions
            .iter()
            .any(|r| !support.contains(r) && face.leq(r));
        if !(touches_in && touches_out) {
            continue;
        }
        let x = arr.interior_point(face)?;
        let incident: Vec<&Polyhedron> = cells.iter().filter(|c| c.contains_point(&x)).collect();
        if !supporting_halfspace_exists(ambient, &x, &incident) {
            return Ok(TietzeOutcome {
                convex: false,
                witness: Some(TietzeWitness::NoSupportingHalfspace { face: face.clone() }),
            });
        }
    }
    Ok(TietzeOutcome {
        convex: true,
        witness: None,
    })
}

/// Whether some nonzero `a` lies in the tangent-cone dual of every
/// incident cell at `x`, i.e. `a . (y - x) >= 0` holds near `x` on all of
/// them. Each dual cone is generated by the cell's constraint normals
/// active at `x`, so the test is feasibility of `a = A_c^T lambda_c`,
/// `lambda_c >= 0`, for all cells at once, with `a` normalized through one
/// coordinate at a time.
fn supporting_halfspace_exists(dim: usize, x: &Vector, cells: &[&Polyhedron]) -> bool {
    let active: Vec<Vec<&Vector>> = cells
        .iter()
        .map(|c| {
            c.halfspaces()
                .iter()
                .filter(|h| h.evaluate(x) == rat(0))
                .map(|h| &h.normal)
                .collect()
        })
        .collect();
    let lambdas: usize = active.iter().map(Vec::len).sum();
    let total = dim + lambdas;
    let mut base = LinearSystem::new(total);
    let mut offset = dim;
    for rows in &active {
        for i in 0..dim {
            let mut coeffs = Vector::zero(total);
            coeffs.set(i, rat(1));
            for (k, row) in rows.iter().enumerate() {
                coeffs.set(offset + k, -row[i].clone());
            }
            base.eq(coeffs, rat(0));
        }
        offset += rows.len();
    }
    for l in 0..lambdas {
        base.ge(Vector::unit(total, dim + l), rat(0));
    }
    for j in 0..dim {
        for sign in [1, -1] {
            let mut sys = base.clone();
            sys.eq(Vector::unit(total, j), rat(sign));
            if sys.is_feasible() {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::tests::lines;
    use crate::complexes::{coarsens, validate_complex};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn edge(a: &str, b: &str) -> Edge {
        Edge::new(sv(a), sv(b))
    }

    fn edge_set(pairs: &[(&str, &str)]) -> EdgeSet {
        pairs.iter().map(|(a, b)| edge(a, b)).collect()
    }

    fn two_axes() -> ArrangementComplex {
        ArrangementComplex::full(lines(2, &[&[1, 0], &[0, 1]]))
    }

    fn three_lines() -> ArrangementComplex {
        ArrangementComplex::full(lines(2, &[&[1, 0], &[0, 1], &[1, -1]]))
    }

    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    /// Decides from the definition whether `edges` is the edge set of some
    /// coarsening: regions must group into classes whose unions are exactly
    /// polyhedra, those cells must form a valid complex, and no un-erased
    /// wall may end up interior to a class. Never consults the polygon
    /// criterion.
    fn definition_accepts(complex: &ArrangementComplex, edges: &EdgeSet) -> bool {
        let arr = complex.arrangement();
        let regions: Vec<&SignVector> = complex.regions().iter().collect();
        let index: BTreeMap<&SignVector, usize> =
            regions.iter().copied().zip(0..regions.len()).collect();
        let mut parent: Vec<usize> = (0..regions.len()).collect();
        for e in edges.iter() {
            let (a, b) = (
                find(&mut parent, index[e.lo()]),
                find(&mut parent, index[e.hi()]),
            );
            parent[a] = b;
        }
        for (e, _) in complex.graph().edges() {
            let same = find(&mut parent, index[e.lo()]) == find(&mut parent, index[e.hi()]);
            if same && !edges.contains(e) {
                return false;
            }
        }
        let mut classes: BTreeMap<usize, BTreeSet<&SignVector>> = BTreeMap::new();
        for (i, r) in regions.iter().enumerate() {
            classes.entry(find(&mut parent, i)).or_default().insert(r);
        }
        let mut cells = Vec::new();
        for class in classes.values() {
            let mut bounding = BTreeMap::new();
            for r in class {
                for h in 0..arr.len() {
                    let wall = r.with(h, Sign::Zero);
                    if !arr.face_exists(&wall).unwrap() || class.contains(&r.flipped_at(h)) {
                        continue;
                    }
                    let half = arr.hyperplanes()[h].halfspace(r.get(h));
                    bounding.insert(half.canonical_key(), half);
                }
            }
            let candidate = Polyhedron::new(arr.dim(), bounding.into_values().collect()).unwrap();
            let covers = class
                .iter()
                .all(|r| candidate.contains(&arr.face_polyhedron(r).unwrap()).unwrap());
            let tight = arr.regions().iter().all(|r| {
                class.contains(r)
                    || !candidate.contains_point(&arr.interior_point(r).unwrap())
            });
            if !covers || !tight {
                return false;
            }
            cells.push(candidate);
        }
        validate_complex(&cells).unwrap().ok
    }

    fn all_edge_subsets(complex: &ArrangementComplex) -> Vec<EdgeSet> {
        let edges: Vec<Edge> = complex.graph().edges().map(|(e, _)| e.clone()).collect();
        (0..1u32 << edges.len())
            .map(|mask| {
                edges
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask & (1 << j) != 0)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn square_rulings() {
        let c = two_axes();
        let ok = |edges: &EdgeSet| {
            check_polygon_property(&c, edges)
                .unwrap()
                .iter()
                .map(|v| v.ruling)
                .collect::<Vec<_>>()
        };
        assert_eq!(ok(&EdgeSet::new()), [PolygonRuling::Ok]);
        assert_eq!(
            ok(&edge_set(&[("++", "-+"), ("+-", "--")])),
            [PolygonRuling::Ok]
        );
        assert_eq!(
            ok(&edge_set(&[("++", "+-")])),
            [PolygonRuling::ClosureViolated]
        );
        assert_eq!(
            ok(&edge_set(&[("++", "+-"), ("++", "-+")])),
            [PolygonRuling::MergedConeNotConvex]
        );
        assert_eq!(
            ok(&edge_set(&[("++", "+-"), ("++", "-+"), ("+-", "--")])),
            [PolygonRuling::ClosureViolated]
        );
        assert_eq!(
            ok(&edge_set(&[
                ("++", "+-"),
                ("++", "-+"),
                ("+-", "--"),
                ("-+", "--")
            ])),
            [PolygonRuling::Ok]
        );
        let non_adjacent = edge_set(&[("++", "--")]);
        assert!(matches!(
            check_polygon_property(&c, &non_adjacent),
            Err(Error::EdgeOutsideGraph { .. })
        ));
    }

    #[test]
    fn square_enumeration_is_frozen() {
        let c = two_axes();
        let got: Vec<EdgeSet> = enumerate_coarsenings(&c).unwrap().collect();
        let expected = vec![
            EdgeSet::new(),
            edge_set(&[("++", "-+"), ("+-", "--")]),
            edge_set(&[("++", "+-"), ("-+", "--")]),
            edge_set(&[("++", "+-"), ("++", "-+"), ("+-", "--"), ("-+", "--")]),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn definition_agrees_with_criterion_and_enumeration() {
        for complex in [two_axes(), three_lines()] {
            let mut accepted = Vec::new();
            for edges in all_edge_subsets(&complex) {
                let by_definition = definition_accepts(&complex, &edges);
                let by_criterion = has_polygon_property(&complex, &edges).unwrap();
                assert_eq!(by_definition, by_criterion, "disagree on {edges}");
                if by_definition {
                    accepted.push(edges);
                }
            }
            let enumerated: Vec<EdgeSet> = enumerate_coarsenings(&complex).unwrap().collect();
            assert_eq!(enumerated.len(), accepted.len());
            let listed: BTreeSet<&EdgeSet> = enumerated.iter().collect();
            assert!(accepted.iter().all(|e| listed.contains(e)));
        }
    }

    #[test]
    fn hexagon_has_22_coarsenings() {
        let c = three_lines();
        assert_eq!(enumerate_coarsenings(&c).unwrap().count(), 22);
        let masks_accepted = (0..64u64)
            .filter(|&m| circular_ruling(m, 6).is_ok())
            .count();
        assert_eq!(masks_accepted, 22);
        assert_eq!(
            (0..16u64).filter(|&m| circular_ruling(m, 4).is_ok()).count(),
            4
        );
    }

    #[test]
    fn enumeration_is_in_indicator_order() {
        let c = three_lines();
        let edges: Vec<Edge> = c.graph().edges().map(|(e, _)| e.clone()).collect();
        let indicator = |set: &EdgeSet| -> String {
            edges
                .iter()
                .map(|e| if set.contains(e) { '1' } else { '0' })
                .collect()
        };
        let strings: Vec<String> = enumerate_coarsenings(&c)
            .unwrap()
            .map(|s| indicator(&s))
            .collect();
        assert!(strings.windows(2).all(|w| w[0] < w[1]), "{strings:?}");
        assert_eq!(strings.first().map(String::as_str), Some("000000"));
        assert_eq!(strings.last().map(String::as_str), Some("111111"));
    }

    #[test]
    fn build_merges_into_halfplanes() {
        let c = two_axes();
        let merged = edge_set(&[("++", "-+"), ("+-", "--")]);
        let built = build_coarsening(&c, &merged).unwrap();
        assert_eq!(built.cells().len(), 2);
        let upper = Polyhedron::new(
            2,
            vec![crate::exact::Halfspace::new(Vector::from_ints(&[0, 1]), rat(0)).unwrap()],
        )
        .unwrap();
        let lower = Polyhedron::new(
            2,
            vec![crate::exact::Halfspace::new(Vector::from_ints(&[0, -1]), rat(0)).unwrap()],
        )
        .unwrap();
        assert!(built.cells().iter().any(|c| c.same_set(&upper).unwrap()));
        assert!(built.cells().iter().any(|c| c.same_set(&lower).unwrap()));
        assert_eq!(edge_set_of(&c, &built).unwrap(), merged);
        assert!(coarsens(&built, &c.to_general().unwrap()).unwrap());

        let bad = edge_set(&[("++", "+-")]);
        assert!(matches!(
            build_coarsening(&c, &bad),
            Err(Error::PolygonPropertyViolation { .. })
        ));
    }

    #[test]
    fn everything_merges_into_the_plane() {
        let c = two_axes();
        let all: EdgeSet = c.graph().edges().map(|(e, _)| e.clone()).collect();
        let built = build_coarsening(&c, &all).unwrap();
        assert_eq!(built.cells().len(), 1);
        assert_eq!(built.cells()[0].halfspaces().len(), 0);
        assert_eq!(edge_set_of(&c, &built).unwrap(), all);
    }

    #[test]
    fn weak_and_zonotopal_properties() {
        for complex in [two_axes(), three_lines()] {
            for edges in all_edge_subsets(&complex) {
                let strong = has_polygon_property(&complex, &edges).unwrap();
                let weak = has_weak_polygon_property(&complex, &edges).unwrap();
                let zonotopal = has_zonotopal_polygon_property(&complex, &edges).unwrap();
                assert!(!strong || weak, "polygon property must imply weak on {edges}");
                assert_eq!(
                    zonotopal, strong,
                    "zonotopal and full criterion must agree on {edges}"
                );
            }
        }
        let c = two_axes();
        let lone = edge_set(&[("++", "+-")]);
        assert!(has_weak_polygon_property(&c, &lone).unwrap());
        assert!(!has_polygon_property(&c, &lone).unwrap());
    }

    #[test]
    fn partial_support_rejected_when_not_convex() {
        let arr = lines(2, &[&[1, 0], &[0, 1]]);
        let ell = ArrangementComplex::new(arr, [sv("++"), sv("-+"), sv("+-")]).unwrap();
        assert!(matches!(
            enumerate_coarsenings(&ell),
            Err(Error::NonConvexSupport)
        ));
        assert!(matches!(
            build_coarsening(&ell, &EdgeSet::new()),
            Err(Error::NonConvexSupport)
        ));
    }

    #[test]
    fn quadrant_regions_support_tietze_verdicts() {
        let arr = lines(2, &[&[1, 0], &[0, 1]]);
        let quadrant = |s: &str| arr.face_polyhedron(&sv(s)).unwrap();

        let ell = [quadrant("++"), quadrant("-+"), quadrant("+-")];
        let out = tietze_check(&ell).unwrap();
        assert!(!out.convex);
        assert_eq!(
            out.witness,
            Some(TietzeWitness::NoSupportingHalfspace { face: sv("00") })
        );

        let halfplane = [quadrant("++"), quadrant("+-")];
        let out = tietze_check(&halfplane).unwrap();
        assert!(out.convex && out.witness.is_none());

        let opposite = [quadrant("++"), quadrant("--")];
        let out = tietze_check(&opposite).unwrap();
        assert!(!out.convex);
        assert_eq!(
            out.witness,
            Some(TietzeWitness::InteriorDisconnected {
                component: vec![sv("++")]
            })
        );

        assert!(tietze_check(&[]).unwrap().convex);
    }

    #[test]
    fn tietze_agrees_with_convex_support_on_quadrant_subsets() {
        let arr = lines(2, &[&[1, 0], &[0, 1]]);
        let regions = arr.regions();
        for mask in 1u32..1 << regions.len() {
            let subset: BTreeSet<SignVector> = regions
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, r)| r.clone())
                .collect();
            let cells: Vec<Polyhedron> = subset
                .iter()
                .map(|r| arr.face_polyhedron(r).unwrap())
                .collect();
            let out = tietze_check(&cells).unwrap();
            let connected = arr.graph(&subset).unwrap().is_connected();
            if connected {
                let convex = crate::complexes::is_convex_support(&arr, &subset).unwrap();
                assert_eq!(out.convex, convex, "subset {subset:?}");
            } else {
                assert!(!out.convex);
                assert!(matches!(
                    out.witness,
                    Some(TietzeWitness::InteriorDisconnected { .. })
                ));
            }
        }
    }

    #[test]
    fn boxes_in_a_row_are_convex() {
        let unit_box = |x0: i64| {
            Polyhedron::new(
                2,
                vec![
                    crate::exact::Halfspace::new(Vector::from_ints(&[1, 0]), rat(x0)).unwrap(),
                    crate::exact::Halfspace::new(Vector::from_ints(&[-1, 0]), rat(-x0 - 1))
                        .unwrap(),
                    crate::exact::Halfspace::new(Vector::from_ints(&[0, 1]), rat(0)).unwrap(),
                    crate::exact::Halfspace::new(Vector::from_ints(&[0, -1]), rat(-1)).unwrap(),
                ],
            )
            .unwrap()
        };
        let out = tietze_check(&[unit_box(0), unit_box(1), unit_box(2)]).unwrap();
        assert!(out.convex, "witness: {:?}", out.witness);
    }

    #[test]
    fn edge_set_serde() {
        let set = edge_set(&[("++", "-+"), ("+-", "--")]);
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(json, r#"{"edges":[["++","-+"],["+-","--"]]}"#);
        let back: EdgeSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
        let reversed: EdgeSet = serde_json::from_str(r#"{"edges":[["-+","++"]]}"#).unwrap();
        assert!(reversed.contains(&edge("++", "-+")));
    }
}
