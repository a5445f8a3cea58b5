//! Polyhedral complexes and their validation.
//!
//! Two representations coexist. An [`ArrangementComplex`] is combinatorial:
//! an arrangement together with a set of its regions, standing for the
//! complex of those closed regions and all their faces. A
//! [`GeneralComplex`] is geometric: a list of full-dimensional cells in
//! halfspace representation, which on construction is tied back to the
//! combinatorial world through the arrangement induced by the cells' facet
//! hyperplanes.
//!
//! Validation comes in two strengths. [`validate_complex`] checks the
//! defining condition of a polyhedral complex pairwise: every intersection
//! of two cells is a face of both. [`validate_shortcut_convex`] exploits
//! convexity of the support: for equidimensional cells covering a convex
//! set, only intersections of codimension at most one can go wrong, so all
//! smaller intersections are skipped. The shortcut refuses inputs outside
//! its hypotheses instead of guessing.

use crate::arrangement::{AdjacencyGraph, Arrangement, Hyperplane, Polygon};
use crate::error::{Error, Result};
use crate::exact::{Polyhedron, Vector};
use crate::sign::{Sign, SignVector};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A complex given by an arrangement and the regions whose closures are its
/// maximal cells. Serialized as `{"arrangement": ..., "cells": ["++", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArrangementComplexData", into = "ArrangementComplexData")]
pub struct ArrangementComplex {
    arrangement: Arrangement,
    regions: BTreeSet<SignVector>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementComplexData {
    arrangement: Arrangement,
    cells: Vec<SignVector>,
}

impl TryFrom<ArrangementComplexData> for ArrangementComplex {
    type Error = Error;
    fn try_from(data: ArrangementComplexData) -> Result<Self> {
        ArrangementComplex::new(data.arrangement, data.cells)
    }
}

impl From<ArrangementComplex> for ArrangementComplexData {
    fn from(c: ArrangementComplex) -> Self {
        ArrangementComplexData {
            arrangement: c.arrangement,
            cells: c.regions.into_iter().collect(),
        }
    }
}

impl ArrangementComplex {
    pub fn new(
        arrangement: Arrangement,
        regions: impl IntoIterator<Item = SignVector>,
    ) -> Result<Self> {
        let regions: BTreeSet<SignVector> = regions.into_iter().collect();
        for r in &regions {
            if !arrangement.face_exists(r)? || !r.is_zero_free() {
                return Err(Error::NotARegion(r.clone()));
            }
        }
        Ok(ArrangementComplex {
            arrangement,
            regions,
        })
    }

    /// The complex of all regions of the arrangement.
    pub fn full(arrangement: Arrangement) -> Self {
        let regions = arrangement.regions().into_iter().collect();
        ArrangementComplex {
            arrangement,
            regions,
        }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn regions(&self) -> &BTreeSet<SignVector> {
        &self.regions
    }

    pub fn graph(&self) -> AdjacencyGraph {
        self.arrangement
            .graph(&self.regions)
            .expect("regions validated on construction")
    }

    /// Polygons at the interior codimension-two faces of the complex.
    pub fn polygons(&self) -> Vec<Polygon> {
        self.arrangement
            .polygons(&self.regions)
            .expect("regions validated on construction")
    }

    /// All faces of the complex: the arrangement faces lying in some cell.
    pub fn faces(&self) -> Vec<SignVector> {
        self.arrangement
            .faces()
            .iter()
            .filter(|f| self.regions.iter().any(|r| f.leq(r)))
            .cloned()
            .collect()
    }

    /// Faces of the complex not properly contained in another face. For a
    /// complex whose support is convex and full-dimensional these are
    /// exactly the regions; in general lower-dimensional stray faces can
    /// survive, so the list is computed rather than assumed.
    pub fn maximal_faces(&self) -> Vec<SignVector> {
        let faces = self.faces();
        faces
            .iter()
            .filter(|f| !faces.iter().any(|g| g != *f && f.leq(g)))
            .cloned()
            .collect()
    }

    /// Whether the union of the cells is convex.
    pub fn is_convex_support(&self) -> bool {
        is_convex_support(&self.arrangement, &self.regions)
            .expect("regions validated on construction")
    }

    /// The maximal cells as closed polyhedra, in region order.
    pub fn cell_polyhedra(&self) -> Vec<Polyhedron> {
        self.regions
            .iter()
            .map(|r| {
                self.arrangement
                    .face_polyhedron(r)
                    .expect("regions validated on construction")
            })
            .collect()
    }

    /// The same complex as a [`GeneralComplex`] over the induced
    /// arrangement.
    pub fn to_general(&self) -> Result<GeneralComplex> {
        GeneralComplex::from_cells(self.arrangement.dim(), self.cell_polyhedra())
    }
}

/// Whether the union of the closed `regions` is a convex set.
///
/// Connectivity of the wall graph rules out detached pieces; after that,
/// convexity is equivalent to every region lying on the inner side of every
/// boundary wall's hyperplane, which makes the union an intersection of
/// halfspaces.
pub fn is_convex_support(arr: &Arrangement, regions: &BTreeSet<SignVector>) -> Result<bool> {
    if regions.is_empty() {
        return Ok(true);
    }
    let graph = arr.graph(regions)?;
    if !graph.is_connected() {
        return Ok(false);
    }
    for r in regions {
        for h in 0..arr.len() {
            let wall = r.with(h, Sign::Zero);
            if !arr.face_exists(&wall)? {
                continue;
            }
            if regions.contains(&r.flipped_at(h)) {
                continue;
            }
            // Boundary wall: the whole support must share this side.
            let inside = r.get(h);
            if regions.iter().any(|s| s.get(h) != inside) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The union of the closed `regions` as a polyhedron: the intersection of
/// the halfspaces on which all the regions agree. Fails with a witness
/// region when the union is not a polyhedron, i.e. when that intersection
/// covers a region outside the given set.
pub fn region_union_polyhedron(
    arr: &Arrangement,
    regions: &BTreeSet<SignVector>,
) -> Result<Polyhedron> {
    if regions.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    arr.graph(regions)?;
    let constraints: Vec<(usize, Sign)> = (0..arr.len())
        .flat_map(|h| [(h, Sign::Plus), (h, Sign::Minus)])
        .filter(|&(h, s)| regions.iter().all(|r| r.get(h) == s))
        .collect();
    for r in arr.regions() {
        if !regions.contains(&r) && constraints.iter().all(|&(h, s)| r.get(h) == s) {
            return Err(Error::NonPolyhedralCell(r));
        }
    }
    let halfspaces = constraints
        .iter()
        .map(|&(h, s)| arr.hyperplanes()[h].halfspace(s))
        .collect();
    Polyhedron::new(arr.dim(), halfspaces)
}

/// A complex of full-dimensional cells in halfspace representation,
/// together with the arrangement induced by their facet hyperplanes.
/// Construction rejects cells that are not full-dimensional and cells with
/// overlapping interiors. Serialized as
/// `{"dim": n, "cells": [{"halfspaces": [...]}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GeneralComplexData", into = "GeneralComplexData")]
pub struct GeneralComplex {
    ambient_dim: usize,
    cells: Vec<Polyhedron>,
    induced: Arrangement,
    cell_regions: Vec<BTreeSet<SignVector>>,
}

#[derive(Serialize, Deserialize)]
struct GeneralComplexData {
    dim: usize,
    cells: Vec<CellData>,
}

#[derive(Serialize, Deserialize)]
struct CellData {
    halfspaces: Vec<crate::exact::Halfspace>,
}

impl TryFrom<GeneralComplexData> for GeneralComplex {
    type Error = Error;
    fn try_from(data: GeneralComplexData) -> Result<Self> {
        let cells = data
            .cells
            .into_iter()
            .map(|c| Polyhedron::new(data.dim, c.halfspaces))
            .collect::<Result<Vec<_>>>()?;
        GeneralComplex::from_cells(data.dim, cells)
    }
}

impl From<GeneralComplex> for GeneralComplexData {
    fn from(c: GeneralComplex) -> Self {
        GeneralComplexData {
            dim: c.ambient_dim,
            cells: c
                .cells
                .into_iter()
                .map(|p| CellData {
                    halfspaces: p.halfspaces().to_vec(),
                })
                .collect(),
        }
    }
}

impl GeneralComplex {
    pub fn from_cells(ambient_dim: usize, cells: Vec<Polyhedron>) -> Result<Self> {
        let (induced, cell_regions) = induced_support(ambient_dim, &cells)?;
        let mut owner: BTreeMap<&SignVector, usize> = BTreeMap::new();
        for (i, regions) in cell_regions.iter().enumerate() {
            for r in regions {
                if let Some(&first) = owner.get(r) {
                    return Err(Error::OverlappingCells { first, second: i });
                }
                owner.insert(r, i);
            }
        }
        Ok(GeneralComplex {
            ambient_dim,
            cells,
            induced,
            cell_regions,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn induced_arrangement(&self) -> &Arrangement {
        &self.induced
    }

    /// For each cell, the regions of the induced arrangement it covers.
    pub fn cell_regions(&self) -> &[BTreeSet<SignVector>] {
        &self.cell_regions
    }

    /// All induced regions covered by some cell.
    pub fn support_regions(&self) -> BTreeSet<SignVector> {
        self.cell_regions.iter().flatten().cloned().collect()
    }

    /// Index of the cell containing the given region of the induced
    /// arrangement.
    pub fn cell_of_region(&self, r: &SignVector) -> Option<usize> {
        self.cell_regions.iter().position(|set| set.contains(r))
    }
}

/// The arrangement of all facet hyperplanes of the given cells, plus the
/// regions each cell covers. Cells must be full-dimensional; overlap is
/// allowed here and checked by the callers that forbid it.
pub(crate) fn induced_support(
    ambient_dim: usize,
    cells: &[Polyhedron],
) -> Result<(Arrangement, Vec<BTreeSet<SignVector>>)> {
    let mut keys = BTreeSet::new();
    for (i, cell) in cells.iter().enumerate() {
        if cell.ambient_dim() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: cell.ambient_dim(),
            });
        }
        let d = cell.dim();
        if d != ambient_dim as i64 {
            return Err(Error::NonFullDimensionalCell {
                index: i,
                dim: d,
                ambient: ambient_dim,
            });
        }
        for h in facet_hyperplanes(cell)? {
            keys.insert(h);
        }
    }
    let hyperplanes = keys
        .into_iter()
        .map(|(normal, offset)| Hyperplane::new(normal, offset))
        .collect::<Result<Vec<_>>>()?;
    let induced = Arrangement::new(ambient_dim, hyperplanes)?;
    let mut cell_regions = Vec::with_capacity(cells.len());
    let interior_points: Vec<(SignVector, Vector)> = induced
        .regions()
        .into_iter()
        .map(|r| {
            let x = induced.interior_point(&r)?;
            Ok((r, x))
        })
        .collect::<Result<Vec<_>>>()?;
    for cell in cells {
        let mut covered = BTreeSet::new();
        for (r, x) in &interior_points {
            if cell.contains_point(x) {
                covered.insert(r.clone());
            }
        }
        cell_regions.push(covered);
    }
    Ok((induced, cell_regions))
}

/// Canonical keys of the facet-defining hyperplanes of a full-dimensional
/// cell.
fn facet_hyperplanes(cell: &Polyhedron) -> Result<BTreeSet<(Vector, crate::exact::Rational)>> {
    let mut keys = BTreeSet::new();
    for h in cell.halfspaces() {
        let boundary = Polyhedron::new(
            cell.ambient_dim(),
            cell.halfspaces()
                .iter()
                .cloned()
                .chain([h.flipped()])
                .collect(),
        )?;
        if boundary.dim() == cell.ambient_dim() as i64 - 1 {
            keys.insert(h.hyperplane_key());
        }
    }
    Ok(keys)
}

/// One defect found by a validator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Cells `first` and `second` meet in a set that is not a face of
    /// `first`.
    IntersectionNotFaceOfFirst { first: usize, second: usize },
    /// Cells `first` and `second` meet in a set that is not a face of
    /// `second`.
    IntersectionNotFaceOfSecond { first: usize, second: usize },
    /// The members lying above `above` do not form a connected piece.
    InteriorDisconnected { above: SignVector },
}

/// Outcome of a complex validation: `ok` with the (possibly truncated to
/// nothing) list of violations in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// Checks the defining property of a polyhedral complex on a list of
/// maximal cells: every pairwise intersection is a face of both cells.
/// (Faces of the listed cells are implicitly part of the complex; checking
/// the maximal cells pairwise settles the general condition.)
pub fn validate_complex(cells: &[Polyhedron]) -> Result<ValidationReport> {
    let Some(first) = cells.first() else {
        return Ok(ValidationReport::from_violations(Vec::new()));
    };
    let dim = first.ambient_dim();
    let mut violations = Vec::new();
    for (i, a) in cells.iter().enumerate() {
        if a.ambient_dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: a.ambient_dim(),
            });
        }
        for (j, b) in cells.iter().enumerate().skip(i + 1) {
            let meet = a.intersect(b)?;
            if meet.is_empty() {
                continue;
            }
            if !meet.is_face_of(a)? {
                violations.push(Violation::IntersectionNotFaceOfFirst { first: i, second: j });
            }
            if !meet.is_face_of(b)? {
                violations.push(Violation::IntersectionNotFaceOfSecond { first: i, second: j });
            }
        }
    }
    Ok(ValidationReport::from_violations(violations))
}

/// Complex validation shortcut for equidimensional cells with convex
/// support: only pairs meeting in codimension at most one are checked.
///
/// Inputs outside the hypotheses are refused: cells of unequal or
/// non-ambient dimension and non-convex supports are errors, not reports.
pub fn validate_shortcut_convex(cells: &[Polyhedron]) -> Result<ValidationReport> {
    if cells.is_empty() {
        return Ok(ValidationReport::from_violations(Vec::new()));
    }
    let dim = cells[0].ambient_dim();
    let first_dim = cells[0].dim();
    for (i, c) in cells.iter().enumerate() {
        if c.ambient_dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.ambient_dim(),
            });
        }
        let d = c.dim();
        if d != first_dim {
            return Err(Error::UnequalCellDimensions {
                first: 0,
                second: i,
                first_dim,
                second_dim: d,
            });
        }
    }
    // induced_support re-checks full-dimensionality and reports the index.
    let (induced, cell_regions) = induced_support(dim, cells)?;
    let support: BTreeSet<SignVector> = cell_regions.into_iter().flatten().collect();
    if !is_convex_support(&induced, &support)? {
        return Err(Error::NonConvexSupport);
    }
    let mut violations = Vec::new();
    for (i, a) in cells.iter().enumerate() {
        for (j, b) in cells.iter().enumerate().skip(i + 1) {
            let meet = a.intersect(b)?;
            if meet.dim() < dim as i64 - 1 {
                continue;
            }
            if !meet.is_face_of(a)? {
                violations.push(Violation::IntersectionNotFaceOfFirst { first: i, second: j });
            }
            if !meet.is_face_of(b)? {
                violations.push(Violation::IntersectionNotFaceOfSecond { first: i, second: j });
            }
        }
    }
    Ok(ValidationReport::from_violations(violations))
}

/// Whether `coarse` is a coarsening of `fine`: both cover the same support
/// and every cell of `fine` lies inside a cell of `coarse`.
pub fn coarsens(coarse: &GeneralComplex, fine: &GeneralComplex) -> Result<bool> {
    if coarse.ambient_dim() != fine.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: fine.ambient_dim(),
            got: coarse.ambient_dim(),
        });
    }
    let union = union_arrangement(&coarse.induced, &fine.induced)?;
    let covered = |cells: &[Polyhedron], x: &Vector| cells.iter().any(|c| c.contains_point(x));
    for r in union.regions() {
        let x = union.interior_point(&r)?;
        if covered(coarse.cells(), &x) != covered(fine.cells(), &x) {
            return Ok(false);
        }
    }
    for m in fine.cells() {
        let mut inside = false;
        for n in coarse.cells() {
            if n.contains(m)? {
                inside = true;
                break;
            }
        }
        if !inside {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The arrangement of all hyperplanes occurring in either argument.
pub fn union_arrangement(a: &Arrangement, b: &Arrangement) -> Result<Arrangement> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let keys: BTreeSet<_> = a
        .hyperplanes()
        .iter()
        .chain(b.hyperplanes())
        .map(Hyperplane::canonical_key)
        .collect();
    let hyperplanes = keys
        .into_iter()
        .map(|(normal, offset)| Hyperplane::new(normal, offset))
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(a.dim(), hyperplanes)
}
