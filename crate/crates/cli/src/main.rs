//! Command-line surface for the coarsening library: every check,
//! construction, and enumeration, over JSON files.
//!
//! Exit codes: 0 the check passed or the construction succeeded; 1 the
//! check ran and failed, with a witness in the payload; 2 the input was
//! malformed or outside an operation's preconditions, with a diagnostic
//! naming the offending field.
//!
//! All payloads are UTF-8 JSON with sorted keys, and identical inputs
//! produce byte-identical output.

mod commands;
mod inputs;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use commands::Outcome;
use inputs::{CliResult, Failure};

#[derive(Parser)]
#[command(
    name = "coarsekit",
    version,
    about = "Exact coarsening tools for polyhedral complexes and hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the payload to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

/// The complex a command works on: a whole arrangement, or the support of
/// a complex file.
#[derive(Args)]
struct SupportArgs {
    /// Arrangement JSON file; the command covers all of its regions.
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with = "cells",
        required_unless_present = "cells"
    )]
    arrangement: Option<PathBuf>,
    /// Complex JSON file; the command covers the regions its cells list.
    #[arg(long, value_name = "FILE")]
    cells: Option<PathBuf>,
}

/// The covector lattice an om-* command works in.
#[derive(Args)]
struct LatticeArgs {
    /// Covector set JSON file (an array of sign strings).
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with = "arrangement",
        required_unless_present = "arrangement"
    )]
    covectors: Option<PathBuf>,
    /// Arrangement JSON file; its face sign vectors form the lattice.
    #[arg(long, value_name = "FILE")]
    arrangement: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List every face of an arrangement as a sign vector.
    Faces {
        /// Arrangement JSON file.
        #[arg(long, value_name = "FILE")]
        arrangement: PathBuf,
    },
    /// Print the region adjacency graph with its wall labels.
    Graph(SupportArgs),
    /// Print the polygons around the interior codimension-two faces.
    Polygons(SupportArgs),
    /// Check whether an edge set has the polygon property.
    CheckPolygonProperty {
        #[command(flatten)]
        support: SupportArgs,
        /// Edge set JSON file.
        #[arg(long, value_name = "FILE")]
        edges: PathBuf,
        /// Run the oriented-matroid variant.
        #[arg(long)]
        om: bool,
    },
    /// Build the coarsening an edge set defines.
    Coarsen {
        #[command(flatten)]
        support: SupportArgs,
        /// Edge set JSON file.
        #[arg(long, value_name = "FILE")]
        edges: PathBuf,
        /// Run the oriented-matroid variant.
        #[arg(long)]
        om: bool,
    },
    /// Enumerate the edge sets of all coarsenings, one JSON record per
    /// line.
    Enumerate {
        #[command(flatten)]
        support: SupportArgs,
        /// Emit only the number of edge sets.
        #[arg(long)]
        count: bool,
    },
    /// Check that the cells of a complex pairwise intersect in common
    /// faces.
    CheckComplex {
        /// Complex JSON file.
        #[arg(long, value_name = "FILE")]
        cells: PathBuf,
    },
    /// Check a complex through the validation shortcut for
    /// equidimensional cells with convex support.
    CheckShortcut {
        /// Complex JSON file.
        #[arg(long, value_name = "FILE")]
        cells: PathBuf,
        /// Rank cutoff: pairwise intersections of rank at most k are
        /// exempt from the face condition.
        #[arg(long, value_name = "INT", requires = "om")]
        k: Option<i64>,
        /// Run the oriented-matroid variant.
        #[arg(long)]
        om: bool,
    },
    /// Test whether the union of the cells is convex, from local data
    /// only.
    Tietze {
        /// Complex JSON file.
        #[arg(long, value_name = "FILE")]
        cells: PathBuf,
        /// Run the oriented-matroid variant.
        #[arg(long)]
        om: bool,
    },
    /// Rewrite a gallery path to a reduced one, logging the moves.
    PathRewrite {
        /// Arrangement JSON file.
        #[arg(long, value_name = "FILE")]
        arrangement: PathBuf,
        /// Path JSON file.
        #[arg(long, value_name = "FILE")]
        path: PathBuf,
    },
    /// Connect two reduced paths with common endpoints by braid moves.
    PathConnect {
        /// Arrangement JSON file.
        #[arg(long, value_name = "FILE")]
        arrangement: PathBuf,
        /// Starting path JSON file.
        #[arg(long, value_name = "FILE")]
        path: PathBuf,
        /// Target path JSON file.
        #[arg(long, value_name = "FILE")]
        to: PathBuf,
    },
    /// Check the covector axioms on a candidate set.
    OmValidate {
        /// Covector set JSON file (an array of sign strings).
        #[arg(long, value_name = "FILE")]
        covectors: PathBuf,
    },
    /// Decide whether a set of topes generates a polytope in the lattice.
    OmPolytope {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Generator topes JSON file (an array of sign strings).
        #[arg(long, value_name = "FILE")]
        generators: PathBuf,
    },
    /// List the faces of a polyhedron in the lattice.
    OmFaces {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Polyhedron JSON file; omitted, the whole lattice.
        #[arg(long, value_name = "FILE")]
        member: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Faces { arrangement } => commands::faces(arrangement),
        Command::Graph(support) => {
            commands::graph(support.arrangement.as_deref(), support.cells.as_deref())
        }
        Command::Polygons(support) => {
            commands::polygons(support.arrangement.as_deref(), support.cells.as_deref())
        }
        Command::CheckPolygonProperty { support, edges, om } => commands::check_polygon_property_cmd(
            support.arrangement.as_deref(),
            support.cells.as_deref(),
            edges,
            *om,
        ),
        Command::Coarsen { support, edges, om } => commands::coarsen(
            support.arrangement.as_deref(),
            support.cells.as_deref(),
            edges,
            *om,
        ),
        Command::Enumerate { support, count } => commands::enumerate(
            support.arrangement.as_deref(),
            support.cells.as_deref(),
            *count,
            cli.output.as_deref(),
        ),
        Command::CheckComplex { cells } => commands::check_complex(cells),
        Command::CheckShortcut { cells, k, om } => commands::check_shortcut(cells, *k, *om),
        Command::Tietze { cells, om } => commands::tietze(cells, *om),
        Command::PathRewrite { arrangement, path } => commands::path_rewrite(arrangement, path),
        Command::PathConnect {
            arrangement,
            path,
            to,
        } => commands::path_connect(arrangement, path, to),
        Command::OmValidate { covectors } => commands::om_validate(covectors),
        Command::OmPolytope {
            lattice,
            generators,
        } => commands::om_polytope(
            lattice.covectors.as_deref(),
            lattice.arrangement.as_deref(),
            generators,
        ),
        Command::OmFaces { lattice, member } => commands::om_faces_cmd(
            lattice.covectors.as_deref(),
            lattice.arrangement.as_deref(),
            member.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass(payload)) => emit(&payload, cli.output.as_deref(), ExitCode::SUCCESS),
        Ok(Outcome::Fail(payload)) => emit(&payload, cli.output.as_deref(), ExitCode::from(1)),
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Err(Failure(message)) => emit(&json!({ "error": message }), None, ExitCode::from(2)),
    }
}

/// Writes the payload, compact with a trailing newline, to the chosen
/// destination, and settles the exit code.
fn emit(payload: &Value, output: Option<&Path>, code: ExitCode) -> ExitCode {
    let mut text = payload.to_string();
    text.push('\n');
    let written = match output {
        Some(path) => fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => code,
        Err(e) => {
            eprintln!("failed to write payload: {e}");
            ExitCode::from(2)
        }
    }
}
