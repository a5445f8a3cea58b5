//! One handler per subcommand. A handler resolves its inputs, runs the
//! library operation, and reports the result as a passing or failing
//! payload; precondition and format problems surface as [`Failure`].

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use coarsekit::coarsening::{
    build_coarsening, check_polygon_property, enumerate_coarsenings, tietze_check,
};
use coarsekit::complexes::{validate_complex, validate_shortcut_convex};
use coarsekit::om::{
    is_om_polytope, om_build_coarsening, om_coarsen_check, om_faces, om_shortcut_validate,
    om_tietze, validate_covector_set, Covector,
};
use coarsekit::paths::{connect_reduced, rewrite_to_reduced};
use coarsekit::{Arrangement, EdgeSet, Error, GalleryPath, ValidationReport};
use serde::Serialize;
use serde_json::{json, Value};

use crate::inputs::{
    load_complex, load_json, load_lattice, load_om_support, load_support, om_view, CliResult,
    Failure, OmPolyhedronInput, PathInput,
};

/// What a handler decided: a payload for a passed check or finished
/// construction, a payload for a failed check, or nothing further because
/// the command already streamed its output.
pub enum Outcome {
    Pass(Value),
    Fail(Value),
    Done,
}

/// Serializes through [`Value`] so object keys come out sorted.
fn to_value<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| Failure(format!("serialization failed: {e}")))
}

fn report_outcome(report: ValidationReport) -> CliResult<Outcome> {
    let ok = report.ok;
    let payload = to_value(&report)?;
    Ok(if ok {
        Outcome::Pass(payload)
    } else {
        Outcome::Fail(payload)
    })
}

pub fn faces(arrangement: &Path) -> CliResult<Outcome> {
    let arr: Arrangement = load_json(arrangement)?;
    Ok(Outcome::Pass(to_value(&arr.faces())?))
}

pub fn graph(arrangement: Option<&Path>, cells: Option<&Path>) -> CliResult<Outcome> {
    let (complex, _) = load_support(arrangement, cells)?;
    let graph = complex.graph();
    let edges: Vec<Value> = graph
        .edges()
        .map(|(e, wall)| json!({ "pair": e, "wall": wall }))
        .collect();
    Ok(Outcome::Pass(
        json!({ "edges": edges, "regions": graph.regions() }),
    ))
}

pub fn polygons(arrangement: Option<&Path>, cells: Option<&Path>) -> CliResult<Outcome> {
    let (complex, _) = load_support(arrangement, cells)?;
    Ok(Outcome::Pass(to_value(&complex.polygons())?))
}

pub fn check_polygon_property_cmd(
    arrangement: Option<&Path>,
    cells: Option<&Path>,
    edges: &Path,
    om: bool,
) -> CliResult<Outcome> {
    let edges: EdgeSet = load_json(edges)?;
    if om {
        let (lattice, support) = load_om_support(arrangement, cells)?;
        if om_coarsen_check(&lattice, &support, &edges)? {
            return Ok(Outcome::Pass(json!({ "ok": true })));
        }
        return Ok(Outcome::Fail(json!({
            "ok": false,
            "witness": om_polygon_witness(&lattice, &support, &edges),
        })));
    }
    let (complex, _) = load_support(arrangement, cells)?;
    let verdicts = check_polygon_property(&complex, &edges)?;
    match verdicts.into_iter().find(|v| !v.is_ok()) {
        None => Ok(Outcome::Pass(json!({ "ok": true }))),
        Some(bad) => Ok(Outcome::Fail(
            json!({ "ok": false, "witness": to_value(&bad)? }),
        )),
    }
}

/// The first failing polygon of an edge set already known to fail,
/// recovered from the construction error.
fn om_polygon_witness(
    lattice: &coarsekit::OmLattice,
    support: &coarsekit::OmPolyhedron,
    edges: &EdgeSet,
) -> Value {
    match om_build_coarsening(lattice, support, edges) {
        Err(Error::PolygonPropertyViolation { polygon, reason }) => {
            json!({ "center": polygon, "reason": reason })
        }
        _ => Value::Null,
    }
}

pub fn coarsen(
    arrangement: Option<&Path>,
    cells: Option<&Path>,
    edges: &Path,
    om: bool,
) -> CliResult<Outcome> {
    let edges: EdgeSet = load_json(edges)?;
    if om {
        let (lattice, support) = load_om_support(arrangement, cells)?;
        if !om_coarsen_check(&lattice, &support, &edges)? {
            return Ok(Outcome::Fail(json!({
                "ok": false,
                "witness": om_polygon_witness(&lattice, &support, &edges),
            })));
        }
        let coarsening = om_build_coarsening(&lattice, &support, &edges)?;
        return Ok(Outcome::Pass(json!({
            "cells": coarsening.cells,
            "classes": coarsening.classes,
        })));
    }
    let (complex, _) = load_support(arrangement, cells)?;
    let verdicts = check_polygon_property(&complex, &edges)?;
    if let Some(bad) = verdicts.into_iter().find(|v| !v.is_ok()) {
        return Ok(Outcome::Fail(
            json!({ "ok": false, "witness": to_value(&bad)? }),
        ));
    }
    let coarse = build_coarsening(&complex, &edges)?;
    Ok(Outcome::Pass(to_value(&coarse)?))
}

pub fn enumerate(
    arrangement: Option<&Path>,
    cells: Option<&Path>,
    count: bool,
    output: Option<&Path>,
) -> CliResult<Outcome> {
    let (complex, _) = load_support(arrangement, cells)?;
    let coarsenings = enumerate_coarsenings(&complex)?;
    if count {
        return Ok(Outcome::Pass(json!({ "count": coarsenings.count() })));
    }
    let mut out = open_output(output)?;
    for edge_set in coarsenings {
        let line = serde_json::to_string(&to_value(&edge_set)?)
            .map_err(|e| Failure(format!("serialization failed: {e}")))?;
        writeln!(out, "{line}").map_err(|e| Failure(format!("write failed: {e}")))?;
    }
    out.flush().map_err(|e| Failure(format!("write failed: {e}")))?;
    Ok(Outcome::Done)
}

fn open_output(output: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn check_complex(cells: &Path) -> CliResult<Outcome> {
    let loaded = load_complex(cells)?;
    report_outcome(validate_complex(&loaded.cells)?)
}

pub fn check_shortcut(cells: &Path, k: Option<i64>, om: bool) -> CliResult<Outcome> {
    let loaded = load_complex(cells)?;
    if om {
        let view = om_view(&loaded, cells)?;
        return report_outcome(om_shortcut_validate(
            &view.lattice,
            &view.members,
            k.unwrap_or(0),
        )?);
    }
    report_outcome(validate_shortcut_convex(&loaded.cells)?)
}

pub fn tietze(cells: &Path, om: bool) -> CliResult<Outcome> {
    let loaded = load_complex(cells)?;
    if om {
        let view = om_view(&loaded, cells)?;
        let convex = om_tietze(&view.lattice, &view.members)?;
        let payload = json!({ "convex": convex });
        return Ok(if convex {
            Outcome::Pass(payload)
        } else {
            Outcome::Fail(payload)
        });
    }
    let outcome = tietze_check(&loaded.cells)?;
    let convex = outcome.convex;
    let payload = to_value(&outcome)?;
    Ok(if convex {
        Outcome::Pass(payload)
    } else {
        Outcome::Fail(payload)
    })
}

pub fn path_rewrite(arrangement: &Path, path: &Path) -> CliResult<Outcome> {
    let arr: Arrangement = load_json(arrangement)?;
    let input: PathInput = load_json(path)?;
    let walk = GalleryPath::new(&arr, input.regions)?;
    let (reduced, log) = rewrite_to_reduced(&arr, &walk)?;
    Ok(Outcome::Pass(json!({ "log": log, "path": reduced })))
}

pub fn path_connect(arrangement: &Path, path: &Path, to: &Path) -> CliResult<Outcome> {
    let arr: Arrangement = load_json(arrangement)?;
    let from: PathInput = load_json(path)?;
    let to: PathInput = load_json(to)?;
    let from = GalleryPath::new(&arr, from.regions)?;
    let to = GalleryPath::new(&arr, to.regions)?;
    let log = connect_reduced(&arr, &from, &to)?;
    Ok(Outcome::Pass(json!({ "log": log })))
}

pub fn om_validate(covectors: &Path) -> CliResult<Outcome> {
    let listed: Vec<Covector> = load_json(covectors)?;
    let set: BTreeSet<Covector> = listed.into_iter().collect();
    match validate_covector_set(&set) {
        None => Ok(Outcome::Pass(json!({ "ok": true }))),
        Some(violation) => Ok(Outcome::Fail(
            json!({ "ok": false, "witness": to_value(&violation)? }),
        )),
    }
}

pub fn om_polytope(
    covectors: Option<&Path>,
    arrangement: Option<&Path>,
    generators: &Path,
) -> CliResult<Outcome> {
    let lattice = load_lattice(covectors, arrangement)?;
    let listed: Vec<Covector> = load_json(generators)?;
    let generators: BTreeSet<Covector> = listed.into_iter().collect();
    let ok = is_om_polytope(&lattice, &generators)?;
    let payload = json!({ "ok": ok });
    Ok(if ok {
        Outcome::Pass(payload)
    } else {
        Outcome::Fail(payload)
    })
}

pub fn om_faces_cmd(
    covectors: Option<&Path>,
    arrangement: Option<&Path>,
    member: Option<&Path>,
) -> CliResult<Outcome> {
    let lattice = load_lattice(covectors, arrangement)?;
    let polyhedron = match member {
        Some(path) => {
            let input: OmPolyhedronInput = load_json(path)?;
            lattice.polyhedron(input.halfspaces)?
        }
        None => lattice.full(),
    };
    let faces = om_faces(&lattice, &polyhedron)?;
    Ok(Outcome::Pass(to_value(&faces)?))
}
