//! File loading and conversion between the interchange formats and the
//! library types. Every loader reports failures as [`Failure`] values whose
//! message names the file and, where possible, the offending field.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use coarsekit::complexes::region_union_polyhedron;
use coarsekit::om::{om_from_arrangement, Covector};
use coarsekit::{
    Arrangement, ArrangementComplex, OmConstraint, OmLattice, OmPolyhedron, Polyhedron, Sign,
    SignVector,
};
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// An input or format problem. The message is the exit-2 diagnostic.
#[derive(Debug)]
pub struct Failure(pub String);

pub type CliResult<T> = Result<T, Failure>;

impl From<coarsekit::Error> for Failure {
    fn from(e: coarsekit::Error) -> Failure {
        Failure(e.to_string())
    }
}

/// Parses a whole JSON file, reporting the path to the offending field on
/// failure (for example `hyperplanes[0].offset`).
pub fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let message = e.into_inner();
        if field == "." {
            Failure(format!("{}: {message}", path.display()))
        } else {
            Failure(format!("{}: {field}: {message}", path.display()))
        }
    })
}

/// A complex over an arrangement, each cell given as the regions whose
/// union it is.
#[derive(Deserialize)]
struct ComplexInput {
    arrangement: Arrangement,
    cells: Vec<Vec<SignVector>>,
}

/// A complex loaded from file: the arrangement, the region set of each
/// cell, and each union verified and rebuilt as a polyhedron.
pub struct LoadedComplex {
    pub arrangement: Arrangement,
    pub cell_regions: Vec<BTreeSet<SignVector>>,
    pub cells: Vec<Polyhedron>,
}

impl LoadedComplex {
    /// All regions covered by some cell.
    pub fn support_regions(&self) -> BTreeSet<SignVector> {
        self.cell_regions.iter().flatten().cloned().collect()
    }
}

pub fn load_complex(path: &Path) -> CliResult<LoadedComplex> {
    let input: ComplexInput = load_json(path)?;
    let mut cells = Vec::with_capacity(input.cells.len());
    let mut cell_regions = Vec::with_capacity(input.cells.len());
    for (i, listed) in input.cells.iter().enumerate() {
        let regions: BTreeSet<SignVector> = listed.iter().cloned().collect();
        let cell = region_union_polyhedron(&input.arrangement, &regions)
            .map_err(|e| Failure(format!("{}: cells[{i}]: {e}", path.display())))?;
        cells.push(cell);
        cell_regions.push(regions);
    }
    Ok(LoadedComplex {
        arrangement: input.arrangement,
        cell_regions,
        cells,
    })
}

/// The subcomplex a command works on, resolved from either an arrangement
/// file (all regions) or a complex file (the union of its cells).
pub fn load_support(
    arrangement: Option<&Path>,
    cells: Option<&Path>,
) -> CliResult<(ArrangementComplex, Option<LoadedComplex>)> {
    match (arrangement, cells) {
        (Some(path), None) => {
            let arr: Arrangement = load_json(path)?;
            Ok((ArrangementComplex::full(arr), None))
        }
        (None, Some(path)) => {
            let loaded = load_complex(path)?;
            let complex =
                ArrangementComplex::new(loaded.arrangement.clone(), loaded.support_regions())?;
            Ok((complex, Some(loaded)))
        }
        _ => Err(Failure(
            "pass exactly one of --arrangement and --cells".into(),
        )),
    }
}

/// Builds the OM polyhedron whose topes are exactly `topes`, from the
/// halfspace constraints all of them satisfy. Fails when the listed set is
/// not the tope set of any polyhedron.
pub fn om_cell(l: &OmLattice, topes: &BTreeSet<Covector>) -> CliResult<OmPolyhedron> {
    for t in topes {
        if !t.is_zero_free() || !l.contains(t) {
            return Err(Failure(format!("{t} is not a tope of the lattice")));
        }
    }
    if topes.is_empty() {
        return Err(Failure("a cell lists no topes".into()));
    }
    let mut constraints = Vec::new();
    for e in 0..l.ground_size() {
        for side in [Sign::Plus, Sign::Minus] {
            if topes.iter().all(|t| t.get(e) == side) {
                constraints.push(OmConstraint::new(e, side)?);
            }
        }
    }
    let p = l.polyhedron(constraints)?;
    let got: BTreeSet<Covector> = p.topes().cloned().collect();
    if let Some(extra) = got.difference(topes).next() {
        return Err(Failure(format!(
            "the listed topes are not the topes of an OM polyhedron: their hull also covers {extra}"
        )));
    }
    Ok(p)
}

/// OM view of a loaded complex: the covector lattice of its arrangement,
/// one polyhedron per cell, and the support as a polyhedron.
pub struct OmComplex {
    pub lattice: OmLattice,
    pub members: Vec<OmPolyhedron>,
}

pub fn om_view(loaded: &LoadedComplex, path: &Path) -> CliResult<OmComplex> {
    let lattice = om_from_arrangement(&loaded.arrangement)?;
    let mut members = Vec::with_capacity(loaded.cell_regions.len());
    for (i, regions) in loaded.cell_regions.iter().enumerate() {
        let cell = om_cell(&lattice, regions)
            .map_err(|Failure(m)| Failure(format!("{}: cells[{i}]: {m}", path.display())))?;
        members.push(cell);
    }
    Ok(OmComplex { lattice, members })
}

/// The OM lattice and support polyhedron for coarsening commands: the full
/// lattice of an arrangement file, or the support of a complex file.
pub fn load_om_support(
    arrangement: Option<&Path>,
    cells: Option<&Path>,
) -> CliResult<(OmLattice, OmPolyhedron)> {
    match (arrangement, cells) {
        (Some(path), None) => {
            let arr: Arrangement = load_json(path)?;
            let lattice = om_from_arrangement(&arr)?;
            let support = lattice.full();
            Ok((lattice, support))
        }
        (None, Some(path)) => {
            let loaded = load_complex(path)?;
            let om = om_view(&loaded, path)?;
            let support = om_cell(&om.lattice, &loaded.support_regions())
                .map_err(|Failure(m)| Failure(format!("{}: support: {m}", path.display())))?;
            Ok((om.lattice, support))
        }
        _ => Err(Failure(
            "pass exactly one of --arrangement and --cells".into(),
        )),
    }
}

/// A gallery path as `{"regions": [...]}`.
#[derive(Deserialize)]
pub struct PathInput {
    pub regions: Vec<SignVector>,
}

/// An OM polyhedron as `{"halfspaces": [{"e": 0, "side": "+"}]}`.
#[derive(Deserialize)]
pub struct OmPolyhedronInput {
    pub halfspaces: Vec<OmConstraint>,
}

/// The lattice for om-* commands: from a covector file (array of sign
/// strings) or from an arrangement file.
pub fn load_lattice(covectors: Option<&Path>, arrangement: Option<&Path>) -> CliResult<OmLattice> {
    match (covectors, arrangement) {
        (Some(path), None) => {
            let set: Vec<Covector> = load_json(path)?;
            Ok(OmLattice::new(set)?)
        }
        (None, Some(path)) => {
            let arr: Arrangement = load_json(path)?;
            Ok(om_from_arrangement(&arr)?)
        }
        _ => Err(Failure(
            "pass exactly one of --covectors and --arrangement".into(),
        )),
    }
}
