//! Acceptance gate for the library's advertised guarantees. Each test
//! covers one criterion, drives the public API against an independent
//! brute-force oracle, and prints a single summary line on success. The
//! oracles deliberately avoid the code paths they judge: coarsenings are
//! rebuilt from unanimous halfspaces, reduced paths are enumerated by
//! graph search, and agreement is asserted case by case.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use coarsekit::coarsening::{
    build_coarsening, edge_set_of, enumerate_coarsenings, has_polygon_property,
    has_zonotopal_polygon_property, tietze_check,
};
use coarsekit::complexes::{coarsens, is_convex_support, validate_complex, validate_shortcut_convex};
use coarsekit::exact::rat;
use coarsekit::om::{
    is_om_polytope, om_build_coarsening, om_coarsen_check, om_faces, om_from_arrangement, om_rank,
    om_shortcut_validate, om_tietze, om_tope_graph, tope_closure,
};
use coarsekit::paths::{apply_moves, connect_reduced, rewrite_to_reduced};
use coarsekit::{
    AdjacencyGraph, Arrangement, ArrangementComplex, Edge, EdgeSet, Error, GalleryPath,
    GeneralComplex, Hyperplane, MoveKind, OmPolyhedron, Polyhedron, Sign, SignVector,
    TietzeWitness, Vector,
};

fn central(dim: usize, normals: &[&[i64]]) -> Arrangement {
    let hyperplanes = normals
        .iter()
        .map(|n| Hyperplane::new(Vector::from_ints(n), rat(0)).unwrap())
        .collect();
    Arrangement::new(dim, hyperplanes).unwrap()
}

fn affine(dim: usize, rows: &[(&[i64], i64)]) -> Arrangement {
    let hyperplanes = rows
        .iter()
        .map(|(n, c)| Hyperplane::new(Vector::from_ints(n), rat(*c)).unwrap())
        .collect();
    Arrangement::new(dim, hyperplanes).unwrap()
}

fn square_fan() -> Arrangement {
    central(2, &[&[1, 0], &[0, 1]])
}

fn hexagon_fan() -> Arrangement {
    central(2, &[&[1, 0], &[0, 1], &[1, -1]])
}

fn octagon_fan() -> Arrangement {
    central(2, &[&[1, 0], &[0, 1], &[1, -1], &[1, 1]])
}

/// The rank-three braid arrangement in its essential coordinates:
/// 24 regions (one per ordering of four coordinates), 36 wall crossings.
fn braid_fan() -> Arrangement {
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

fn graph_edges(complex: &ArrangementComplex) -> Vec<Edge> {
    complex.graph().edges().map(|(e, _)| e.clone()).collect()
}

fn pick(edges: &[Edge], bits: u64) -> EdgeSet {
    edges
        .iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, e)| e.clone())
        .collect()
}

fn region_subset(regions: &[SignVector], bits: u64) -> BTreeSet<SignVector> {
    regions
        .iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, r)| r.clone())
        .collect()
}

/// Merges regions along the chosen edges. Plain union-find on sign
/// vectors; no geometry involved.
fn merged_classes(regions: &BTreeSet<SignVector>, edges: &EdgeSet) -> Vec<BTreeSet<SignVector>> {
    let mut classes: Vec<BTreeSet<SignVector>> = regions
        .iter()
        .map(|r| BTreeSet::from([r.clone()]))
        .collect();
    for e in edges.iter() {
        let i = classes.iter().position(|c| c.contains(e.lo())).unwrap();
        let j = classes.iter().position(|c| c.contains(e.hi())).unwrap();
        if i != j {
            let merged = classes.remove(i.max(j));
            classes[i.min(j)].extend(merged);
        }
    }
    classes
}

/// The halfspace constraints every region of `class` agrees on.
fn unanimous(arr: &Arrangement, class: &BTreeSet<SignVector>) -> Vec<(usize, Sign)> {
    (0..arr.hyperplanes().len())
        .flat_map(|h| [(h, Sign::Plus), (h, Sign::Minus)])
        .filter(|&(h, s)| class.iter().all(|r| r.get(h) == s))
        .collect()
}

fn constraint_polyhedron(arr: &Arrangement, constraints: &[(usize, Sign)]) -> Polyhedron {
    let halfspaces = constraints
        .iter()
        .map(|&(h, s)| arr.hyperplanes()[h].halfspace(s))
        .collect();
    Polyhedron::new(arr.dim(), halfspaces).unwrap()
}

/// Brute-force oracle for the coarsening criterion: merge the regions
/// along the chosen edges, rebuild each class as the intersection of its
/// unanimous halfspaces, and accept exactly when every class is
/// recovered, the cells validate as a complex, the result coarsens the
/// original, and it erases precisely the chosen walls.
fn reconstructs(
    arr: &Arrangement,
    complex: &ArrangementComplex,
    fine: &GeneralComplex,
    chosen: &EdgeSet,
) -> bool {
    let classes = merged_classes(complex.regions(), chosen);
    let mut cells = Vec::new();
    for class in &classes {
        let constraints = unanimous(arr, class);
        let inside: BTreeSet<SignVector> = complex
            .regions()
            .iter()
            .filter(|r| constraints.iter().all(|&(h, s)| r.get(h) == s))
            .cloned()
            .collect();
        if inside != *class {
            return false;
        }
        cells.push(constraint_polyhedron(arr, &constraints));
    }
    if !validate_complex(&cells).unwrap().ok {
        return false;
    }
    let coarse = GeneralComplex::from_cells(arr.dim(), cells).unwrap();
    coarsens(&coarse, fine).unwrap() && edge_set_of(complex, &coarse).unwrap() == *chosen
}

#[test]
fn criterion_1_polygon_property_matches_reconstruction() {
    let start = Instant::now();
    let mut agreements = 0usize;
    for arr in [square_fan(), hexagon_fan()] {
        let complex = ArrangementComplex::full(arr.clone());
        let fine = complex.to_general().unwrap();
        let edges = graph_edges(&complex);
        for bits in 0..1u64 << edges.len() {
            let chosen = pick(&edges, bits);
            let fast = has_polygon_property(&complex, &chosen).unwrap();
            assert_eq!(
                fast,
                reconstructs(&arr, &complex, &fine, &chosen),
                "edge subset {chosen:?}"
            );
            if fast {
                let built = build_coarsening(&complex, &chosen).unwrap();
                assert!(coarsens(&built, &fine).unwrap());
                assert_eq!(edge_set_of(&complex, &built).unwrap(), chosen);
            } else {
                assert!(build_coarsening(&complex, &chosen).is_err());
            }
            agreements += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 1: pass ({agreements} edge subsets agree, {elapsed:?})");
}

/// Ten thousand seeded edge subsets of the braid fan, shared between the
/// enumeration and zonotopal criteria.
fn braid_samples(edges: &[Edge]) -> Vec<EdgeSet> {
    let mut rng = StdRng::seed_from_u64(0x5eed_2026);
    (0..10_000)
        .map(|_| pick(edges, rng.gen::<u64>() & ((1 << edges.len()) - 1)))
        .collect()
}

#[test]
fn criterion_2_enumeration_counts() {
    let square = ArrangementComplex::full(square_fan());
    let square_edges = graph_edges(&square);
    let found: BTreeSet<EdgeSet> = enumerate_coarsenings(&square).unwrap().collect();
    assert_eq!(found.len(), 4);
    let brute: BTreeSet<EdgeSet> = (0..1u64 << square_edges.len())
        .map(|b| pick(&square_edges, b))
        .filter(|e| has_polygon_property(&square, e).unwrap())
        .collect();
    assert_eq!(found, brute);

    let hexagon = ArrangementComplex::full(hexagon_fan());
    let hexagon_edges = graph_edges(&hexagon);
    let found: BTreeSet<EdgeSet> = enumerate_coarsenings(&hexagon).unwrap().collect();
    let brute: BTreeSet<EdgeSet> = (0..1u64 << hexagon_edges.len())
        .map(|b| pick(&hexagon_edges, b))
        .filter(|e| has_polygon_property(&hexagon, e).unwrap())
        .collect();
    assert_eq!(found, brute);
    assert_eq!(found.len(), 22);

    let braid = ArrangementComplex::full(braid_fan());
    assert_eq!(braid.regions().len(), 24);
    let braid_edges = graph_edges(&braid);
    assert_eq!(braid_edges.len(), 36);
    let start = Instant::now();
    let braid_sets: BTreeSet<EdgeSet> = enumerate_coarsenings(&braid).unwrap().collect();
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "enumeration took {elapsed:?}");
    assert!(braid_sets.contains(&EdgeSet::new()));
    assert!(braid_sets.contains(&pick(&braid_edges, u64::MAX >> (64 - braid_edges.len()))));
    for sample in braid_samples(&braid_edges) {
        assert_eq!(
            braid_sets.contains(&sample),
            has_polygon_property(&braid, &sample).unwrap(),
            "sampled subset {sample:?}"
        );
    }
    println!(
        "criterion 2: pass (square 4, hexagon 22, braid {} coarsenings in {elapsed:?}, 10000 samples agree)",
        braid_sets.len()
    );
}

fn random_arrangement(rng: &mut StdRng) -> Arrangement {
    loop {
        let dim = if rng.gen_bool(0.5) { 2 } else { 3 };
        let count = rng.gen_range(1..=4);
        let mut hyperplanes = Vec::new();
        for _ in 0..count {
            let normal: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
            if normal.iter().all(|&c| c == 0) {
                continue;
            }
            let offset = rng.gen_range(-1..=1);
            hyperplanes.push(Hyperplane::new(Vector::from_ints(&normal), rat(offset)).unwrap());
        }
        if hyperplanes.is_empty() {
            continue;
        }
        if let Ok(arr) = Arrangement::new(dim, hyperplanes) {
            return arr;
        }
    }
}

/// One to three candidate cells built as unanimous hulls of random region
/// groups. Groups whose hull grabs extra regions produce genuine
/// validation failures, which is the point.
fn random_cells(rng: &mut StdRng) -> Vec<Polyhedron> {
    loop {
        let arr = random_arrangement(rng);
        let regions = arr.regions();
        let chosen: Vec<SignVector> = regions
            .iter()
            .filter(|_| rng.gen_bool(0.6))
            .cloned()
            .collect();
        if chosen.is_empty() {
            continue;
        }
        let groups = rng.gen_range(1..=3usize.min(chosen.len()));
        let mut buckets: Vec<BTreeSet<SignVector>> = vec![BTreeSet::new(); groups];
        for r in chosen {
            let g = rng.gen_range(0..groups);
            buckets[g].insert(r);
        }
        buckets.retain(|b| !b.is_empty());
        return buckets
            .iter()
            .map(|b| constraint_polyhedron(&arr, &unanimous(&arr, b)))
            .collect();
    }
}

#[test]
fn criterion_3_shortcut_soundness() {
    let mut compared = 0usize;
    for arr in [square_fan(), hexagon_fan()] {
        let complex = ArrangementComplex::full(arr);
        for edges in enumerate_coarsenings(&complex).unwrap() {
            let cells = build_coarsening(&complex, &edges).unwrap().cells().to_vec();
            let full = validate_complex(&cells).unwrap();
            let fast = validate_shortcut_convex(&cells).unwrap();
            assert_eq!(fast.ok, full.ok);
            assert!(fast.ok, "a real coarsening must validate");
            compared += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_3001);
    let mut skipped = 0usize;
    for case in 0..200 {
        let cells = random_cells(&mut rng);
        let full = validate_complex(&cells).unwrap();
        match validate_shortcut_convex(&cells) {
            Ok(fast) => {
                assert_eq!(fast.ok, full.ok, "case {case}");
                compared += 1;
            }
            Err(Error::NonConvexSupport) => skipped += 1,
            Err(other) => panic!("case {case}: unexpected error {other}"),
        }
    }
    println!("criterion 3: pass ({compared} agreements, {skipped} non-convex supports out of scope)");
}

/// Every reduced gallery path between two regions, found by walking the
/// adjacency graph so that each step removes one separating wall.
fn reduced_paths(graph: &AdjacencyGraph, q: &SignVector, r: &SignVector) -> Vec<Vec<SignVector>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![q.clone()]];
    while let Some(prefix) = stack.pop() {
        let here = prefix.last().unwrap();
        if here == r {
            out.push(prefix);
            continue;
        }
        let left = here.separation(r).len();
        for n in graph.neighbors(here) {
            if n.separation(r).len() == left - 1 {
                let mut next = prefix.clone();
                next.push(n.clone());
                stack.push(next);
            }
        }
    }
    out
}

#[test]
fn criterion_4_path_connection_and_rewriting() {
    let start = Instant::now();
    let arrangements = vec![
        central(2, &[&[1, 0]]),
        square_fan(),
        hexagon_fan(),
        octagon_fan(),
        affine(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1)]),
        affine(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 0], 1), (&[0, 1], 1)]),
    ];
    let mut cases = 0usize;
    let mut rng = StdRng::seed_from_u64(0x5eed_4001);
    for arr in &arrangements {
        let regions = arr.regions();
        let support: BTreeSet<SignVector> = regions.iter().cloned().collect();
        let graph = arr.graph(&support).unwrap();
        for q in &regions {
            for r in &regions {
                let found = reduced_paths(&graph, q, r);
                assert!(!found.is_empty(), "no reduced path {q} -> {r}");
                let paths: Vec<GalleryPath> = found
                    .into_iter()
                    .map(|w| GalleryPath::new(arr, w).unwrap())
                    .collect();
                assert!(paths.iter().all(GalleryPath::is_reduced));
                for a in &paths {
                    for b in &paths {
                        let log = connect_reduced(arr, a, b).unwrap();
                        assert!(log.iter().all(|m| m.kind == MoveKind::Braid));
                        assert_eq!(&apply_moves(arr, a, &log).unwrap(), b);
                        cases += 1;
                    }
                }
            }
        }
        for _ in 0..170 {
            let mut walk = vec![regions[rng.gen_range(0..regions.len())].clone()];
            for _ in 0..rng.gen_range(0..=10) {
                let next: Vec<&SignVector> = graph.neighbors(walk.last().unwrap()).collect();
                if next.is_empty() {
                    break;
                }
                walk.push(next[rng.gen_range(0..next.len())].clone());
            }
            let path = GalleryPath::new(arr, walk).unwrap();
            let (reduced, log) = rewrite_to_reduced(arr, &path).unwrap();
            assert!(reduced.is_reduced());
            assert_eq!(reduced.first(), path.first());
            assert_eq!(reduced.last(), path.last());
            assert_eq!(reduced.steps(), path.first().separation(path.last()).len());
            assert_eq!(apply_moves(arr, &path, &log).unwrap(), reduced);
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(cases >= 1000, "only {cases} cases exercised");
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("criterion 4: pass ({cases} path cases, {elapsed:?})");
}

#[test]
fn criterion_5_tietze_agreement() {
    let mut checked = 0usize;
    for arr in [square_fan(), hexagon_fan()] {
        let regions = arr.regions();
        for bits in 1u64..1 << regions.len() {
            let subset = region_subset(&regions, bits);
            let cells: Vec<Polyhedron> = subset
                .iter()
                .map(|r| arr.face_polyhedron(r).unwrap())
                .collect();
            let outcome = tietze_check(&cells).unwrap();
            if arr.graph(&subset).unwrap().is_connected() {
                assert_eq!(
                    outcome.convex,
                    is_convex_support(&arr, &subset).unwrap(),
                    "subset {subset:?}"
                );
                if outcome.convex {
                    assert!(outcome.witness.is_none());
                } else {
                    assert!(matches!(
                        outcome.witness,
                        Some(TietzeWitness::NoSupportingHalfspace { .. })
                    ));
                }
            } else {
                assert!(!outcome.convex);
                assert!(matches!(
                    outcome.witness,
                    Some(TietzeWitness::InteriorDisconnected { .. })
                ));
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 15 + 63);
    println!("criterion 5: pass ({checked} region subsets)");
}

#[test]
fn criterion_6_om_bridge() {
    let mut agreements = 0usize;
    for arr in [square_fan(), hexagon_fan(), octagon_fan()] {
        let l = om_from_arrangement(&arr).unwrap();
        let complex = ArrangementComplex::full(arr.clone());

        let faces = complex.faces();
        assert_eq!(l.covectors().to_vec(), faces);
        for f in &faces {
            assert_eq!(l.rank_of(f).unwrap() as i64, arr.face_dim(f).unwrap());
        }

        let support = l.full();
        let tope_graph = om_tope_graph(&l, &support).unwrap();
        let graph = complex.graph();
        assert_eq!(tope_graph.len(), graph.edge_count());
        for (edge, h) in graph.edges() {
            let wall = tope_graph.get(edge).expect("adjacency edge missing");
            assert_eq!(wall.get(h), Sign::Zero);
        }

        let edges = graph_edges(&complex);
        for bits in 0..1u64 << edges.len() {
            let chosen = pick(&edges, bits);
            let geometric = has_polygon_property(&complex, &chosen).unwrap();
            assert_eq!(
                om_coarsen_check(&l, &support, &chosen).unwrap(),
                geometric,
                "edge subset {chosen:?}"
            );
            if geometric {
                let om_built = om_build_coarsening(&l, &support, &chosen).unwrap();
                let om_classes: BTreeSet<BTreeSet<SignVector>> =
                    om_built.classes.iter().cloned().collect();
                let classes: BTreeSet<BTreeSet<SignVector>> =
                    merged_classes(complex.regions(), &chosen).into_iter().collect();
                assert_eq!(om_classes, classes);
                for (class, cell) in om_built.classes.iter().zip(&om_built.cells) {
                    let topes: BTreeSet<SignVector> = cell.topes().cloned().collect();
                    assert_eq!(&topes, class);
                    // An om cell holds exactly the faces inside the merged region.
                    let inside: BTreeSet<SignVector> = faces
                        .iter()
                        .filter(|y| class.iter().any(|t| y.leq(t)))
                        .cloned()
                        .collect();
                    assert_eq!(cell.members(), &inside);
                }
                build_coarsening(&complex, &chosen).unwrap();
            }
            agreements += 1;
        }

        let regions = arr.regions();
        for bits in 1u64..1 << regions.len() {
            let subset = region_subset(&regions, bits);
            let closures: Vec<OmPolyhedron> = subset
                .iter()
                .map(|t| tope_closure(&l, t).unwrap())
                .collect();
            let cells: Vec<Polyhedron> = subset
                .iter()
                .map(|t| arr.face_polyhedron(t).unwrap())
                .collect();
            let convex = is_convex_support(&arr, &subset).unwrap();
            assert_eq!(
                om_tietze(&l, &closures).unwrap(),
                tietze_check(&cells).unwrap().convex,
                "subset {subset:?}"
            );
            assert_eq!(is_om_polytope(&l, &subset).unwrap(), convex);
            if convex {
                assert_eq!(
                    om_shortcut_validate(&l, &closures, 0).unwrap().ok,
                    validate_shortcut_convex(&cells).unwrap().ok,
                );
            }
            agreements += 1;
        }

        for t in l.topes() {
            let closure = tope_closure(&l, t).unwrap();
            assert_eq!(om_rank(&l, &closure).unwrap(), arr.face_dim(t).unwrap());
            let om_face_sets: BTreeSet<BTreeSet<SignVector>> = om_faces(&l, &closure)
                .unwrap()
                .iter()
                .map(|f| f.members().clone())
                .collect();
            let geometric_faces: BTreeSet<BTreeSet<SignVector>> = faces
                .iter()
                .filter(|g| g.leq(t))
                .map(|g| faces.iter().filter(|y| y.leq(g)).cloned().collect())
                .collect();
            assert_eq!(om_face_sets, geometric_faces);
        }
    }
    println!("criterion 6: pass ({agreements} bridged inputs over three fans)");
}

#[test]
fn criterion_7_zonotopal_equivalence() {
    let mut checked = 0usize;
    for arr in [square_fan(), hexagon_fan()] {
        let complex = ArrangementComplex::full(arr);
        let edges = graph_edges(&complex);
        for bits in 0..1u64 << edges.len() {
            let chosen = pick(&edges, bits);
            assert_eq!(
                has_zonotopal_polygon_property(&complex, &chosen).unwrap(),
                has_polygon_property(&complex, &chosen).unwrap(),
                "edge subset {chosen:?}"
            );
            checked += 1;
        }
    }
    let braid = ArrangementComplex::full(braid_fan());
    let braid_edges = graph_edges(&braid);
    for sample in braid_samples(&braid_edges) {
        assert_eq!(
            has_zonotopal_polygon_property(&braid, &sample).unwrap(),
            has_polygon_property(&braid, &sample).unwrap(),
            "sampled subset {sample:?}"
        );
        checked += 1;
    }
    println!("criterion 7: pass ({checked} subsets)");
}
