//! Gallery paths: walks through adjacent regions of an arrangement, the
//! braid and nil moves that rewrite them, and the algorithms that connect
//! any path to a reduced one.
//!
//! A path is reduced when it crosses each separating hyperplane exactly
//! once, so its length is the separation distance of its endpoints. Two
//! reduced paths with the same endpoints are always connected by braid
//! moves alone ([`connect_reduced`]), and any path rewrites to a reduced
//! one by braid moves plus backtrack cancellations ([`rewrite_to_reduced`]).
//! Both return replayable [`MoveLog`]s; positions in a log always refer to
//! the path as it stands when that move is applied.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{Rational, Vector};
use crate::sign::{Sign, SignVector};

/// A walk through pairwise-adjacent regions of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GalleryPath {
    regions: Vec<SignVector>,
}

impl GalleryPath {
    /// Validates that every entry is a region and consecutive entries are
    /// adjacent (they differ in exactly one sign).
    pub fn new(arr: &Arrangement, regions: Vec<SignVector>) -> Result<GalleryPath> {
        if regions.is_empty() {
            return Err(Error::InvalidPath {
                position: 0,
                reason: "a path visits at least one region".into(),
            });
        }
        for (i, r) in regions.iter().enumerate() {
            if !r.is_zero_free() || !arr.face_exists(r)? {
                return Err(Error::InvalidPath {
                    position: i,
                    reason: format!("{r} is not a region"),
                });
            }
        }
        for i in 1..regions.len() {
            let sep = regions[i - 1].separation(&regions[i]).len();
            if sep != 1 {
                return Err(Error::InvalidPath {
                    position: i,
                    reason: format!("consecutive regions differ on {sep} hyperplanes"),
                });
            }
        }
        Ok(GalleryPath { regions })
    }

    pub fn regions(&self) -> &[SignVector] {
        &self.regions
    }

    /// Number of regions visited.
    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of wall crossings, one less than [`len`](Self::len).
    pub fn steps(&self) -> usize {
        self.regions.len() - 1
    }

    pub fn first(&self) -> &SignVector {
        self.regions.first().expect("paths are nonempty")
    }

    pub fn last(&self) -> &SignVector {
        self.regions.last().expect("paths are nonempty")
    }

    /// Whether the path has minimal length among paths with its endpoints,
    /// equivalently whether its length equals the separation of its
    /// endpoints.
    pub fn is_reduced(&self) -> bool {
        self.steps() == self.first().separation(self.last()).len()
    }
}

impl fmt::Display for GalleryPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.regions.iter().enumerate() {
            if i > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// Replace a half circuit around a codimension-two face by the
    /// complementary half circuit. Keeps the length.
    Braid,
    /// Cancel a backtrack: drop positions `p + 1` and `p + 2` when the
    /// regions at `p` and `p + 2` coincide. Shortens the path by two.
    Nil,
}

/// One rewriting step. `position` indexes into the path at the moment the
/// move is applied; a braid names the codimension-two face it pivots
/// around.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub position: usize,
    /// Center face of a braid move; `null` for nil moves.
    #[serde(default)]
    pub polygon: Option<SignVector>,
}

pub type MoveLog = Vec<Move>;

/// Applies a braid move: the subpath starting at `position` must be one of
/// the two half circuits between antipodal regions around `center`, and is
/// replaced by the other one.
pub fn apply_braid(
    arr: &Arrangement,
    path: &GalleryPath,
    position: usize,
    center: &SignVector,
) -> Result<GalleryPath> {
    let fan = arr.planar_fan(center)?;
    let ring = &fan.regions;
    let n = ring.len();
    let half = fan.line_count();
    let regions = path.regions();
    if position + half + 1 > regions.len() {
        return Err(Error::InvalidMove {
            position,
            reason: format!("the path has no {half}-step subpath at this position"),
        });
    }
    let sub = &regions[position..=position + half];
    let Some(start) = ring.iter().position(|r| r == &sub[0]) else {
        return Err(Error::InvalidMove {
            position,
            reason: format!("{} is not a region around {center}", sub[0]),
        });
    };
    let at = |k: i64| &ring[k.rem_euclid(n as i64) as usize];
    let traces = |dir: i64| (0..=half).all(|j| at(start as i64 + dir * j as i64) == &sub[j]);
    let dir: i64 = if traces(1) {
        1
    } else if traces(-1) {
        -1
    } else {
        return Err(Error::InvalidMove {
            position,
            reason: format!("subpath is not a half circuit around {center}"),
        });
    };
    let mut regions = regions.to_vec();
    for j in 0..=half {
        regions[position + j] = at(start as i64 - dir * j as i64).clone();
    }
    Ok(GalleryPath { regions })
}

/// Applies a nil move: requires the regions at `position` and
/// `position + 2` to coincide and removes the two entries after
/// `position`.
pub fn apply_nil(path: &GalleryPath, position: usize) -> Result<GalleryPath> {
    let regions = path.regions();
    if position + 2 >= regions.len() {
        return Err(Error::InvalidMove {
            position,
            reason: "the path has no two steps at this position".into(),
        });
    }
    if regions[position] != regions[position + 2] {
        return Err(Error::InvalidMove {
            position,
            reason: "the regions two steps apart differ".into(),
        });
    }
    let mut regions = regions.to_vec();
    regions.drain(position + 1..=position + 2);
    Ok(GalleryPath { regions })
}

pub fn apply_move(arr: &Arrangement, path: &GalleryPath, mv: &Move) -> Result<GalleryPath> {
    match mv.kind {
        MoveKind::Braid => {
            let Some(center) = &mv.polygon else {
                return Err(Error::InvalidMove {
                    position: mv.position,
                    reason: "braid move names no polygon".into(),
                });
            };
            apply_braid(arr, path, mv.position, center)
        }
        MoveKind::Nil => apply_nil(path, mv.position),
    }
}

/// Replays a move log from start to finish.
pub fn apply_moves(arr: &Arrangement, path: &GalleryPath, moves: &[Move]) -> Result<GalleryPath> {
    let mut current = path.clone();
    for mv in moves {
        current = apply_move(arr, &current, mv)?;
    }
    Ok(current)
}

/// The reduced path traced by the straight segment between interior points
/// of the two regions, crossing the separating hyperplanes in the order
/// the segment meets them. If the segment meets two hyperplanes at once,
/// the far endpoint is nudged inside its region, deterministically, until
/// the crossings are distinct; the result is therefore canonical for the
/// arrangement even though it depends on the interior points chosen.
pub fn geometric_reduced_path(
    arr: &Arrangement,
    from: &SignVector,
    to: &SignVector,
) -> Result<GalleryPath> {
    for end in [from, to] {
        if !end.is_zero_free() || !arr.face_exists(end)? {
            return Err(Error::NotARegion(end.clone()));
        }
    }
    let separating = from.separation(to);
    if separating.is_empty() {
        return Ok(GalleryPath {
            regions: vec![from.clone()],
        });
    }
    let x = arr.interior_point(from)?;
    let base = arr.interior_point(to)?;
    let mut crossings = crossing_order(arr, &x, &base, &separating);
    if crossings.is_none() {
        // Walk a moment-curve direction with shrinking step until the
        // segment is generic; each direction escapes any fixed degeneracy
        // hyperplane, and small steps stay interior.
        for round in 1..=200u32 {
            let direction = Vector::new(
                (0..arr.dim())
                    .map(|i| Rational::from_integer(BigInt::from(round).pow(i as u32)))
                    .collect(),
            );
            let eps = Rational::new(BigInt::one(), BigInt::from(2).pow(round));
            let y = base.add(&direction.scale(&eps));
            if arr.sign_vector_of(&y)? != *to {
                continue;
            }
            crossings = crossing_order(arr, &x, &y, &separating);
            if crossings.is_some() {
                break;
            }
        }
    }
    let order = crossings.expect("a generic segment exists between any two regions");
    let mut regions = vec![from.clone()];
    for (_, h) in order {
        let next = regions.last().expect("nonempty").flipped_at(h);
        debug_assert!(arr.face_exists(&next).unwrap_or(false));
        regions.push(next);
    }
    debug_assert_eq!(regions.last(), Some(to));
    Ok(GalleryPath { regions })
}

/// Parameters at which the segment from `x` to `y` crosses each listed
/// hyperplane, sorted; `None` if two crossings coincide.
fn crossing_order(
    arr: &Arrangement,
    x: &Vector,
    y: &Vector,
    separating: &[usize],
) -> Option<Vec<(Rational, usize)>> {
    let mut order: Vec<(Rational, usize)> = separating
        .iter()
        .map(|&h| {
            let plane = &arr.hyperplanes()[h];
            let ax = plane.evaluate(x);
            let ay = plane.evaluate(y);
            // Strictly opposite signs at the endpoints keep this finite
            // and in (0, 1).
            ((-&ax) / (ay - ax), h)
        })
        .collect();
    order.sort();
    let distinct = order.windows(2).all(|w| w[0].0 != w[1].0);
    distinct.then_some(order)
}

/// Connects two reduced paths with common endpoints by braid moves,
/// returning the log that rewrites `from` into `to`.
pub fn connect_reduced(
    arr: &Arrangement,
    from: &GalleryPath,
    to: &GalleryPath,
) -> Result<MoveLog> {
    if from.first() != to.first() || from.last() != to.last() {
        return Err(Error::EndpointMismatch);
    }
    if !from.is_reduced() || !to.is_reduced() {
        return Err(Error::NotReduced);
    }
    let mut log = MoveLog::new();
    connect_inner(arr, from.regions(), to.regions(), 0, &mut log)?;
    Ok(log)
}

/// Recursive step of [`connect_reduced`] on region slices. `offset` is the
/// index of `a[0]` within the full path, so logged positions stay valid.
///
/// When the paths disagree on their first wall, walk the boundary of the
/// start region from one first wall to the other through ridges, staying
/// on walls of separating hyperplanes; pivoting around the last ridge of
/// that walk replaces the first wall by one strictly closer, which bounds
/// the recursion lexicographically by (path length, walk length).
fn connect_inner(
    arr: &Arrangement,
    a: &[SignVector],
    b: &[SignVector],
    offset: usize,
    log: &mut MoveLog,
) -> Result<()> {
    debug_assert_eq!(a.len(), b.len());
    if a == b {
        return Ok(());
    }
    if a[1] == b[1] {
        return connect_inner(arr, &a[1..], &b[1..], offset + 1, log);
    }
    let start = &a[0];
    let goal = a.last().expect("paths are nonempty");
    let first_wall = |p: &[SignVector]| p[0].separation(&p[1])[0];
    let sequence = wall_sequence(arr, start, goal, first_wall(a), first_wall(b))?;
    let m = sequence.len() - 1;
    debug_assert!(m >= 1);
    let tau = ridge_between(arr, start, sequence[m - 1], sequence[m])?
        .expect("consecutive walls of the sequence share a ridge");
    let fan = arr.planar_fan(&tau)?;
    let ring = &fan.regions;
    let n = ring.len();
    let half = fan.line_count();
    let s = ring
        .iter()
        .position(|r| r == start)
        .expect("the pivot ridge is a face of the start region");
    let arc = |dir: i64| -> Vec<SignVector> {
        (0..=half as i64)
            .map(|j| ring[(s as i64 + dir * j).rem_euclid(n as i64) as usize].clone())
            .collect()
    };
    // The two fan walls of the start region lie on the hyperplanes of the
    // last two walls of the sequence; pick directions so that the arc
    // toward `b` leaves through the hyperplane of b's first wall.
    let counterclockwise_first = fan.ray_hyperplanes[(s + 1) % n];
    debug_assert_eq!(
        BTreeSet::from([counterclockwise_first, fan.ray_hyperplanes[s]]),
        BTreeSet::from([sequence[m - 1], sequence[m]]),
    );
    let (arc_gamma, arc_rho) = if counterclockwise_first == sequence[m] {
        (arc(-1), arc(1))
    } else {
        (arc(1), arc(-1))
    };
    let antipode = arc_rho.last().expect("arcs are nonempty").clone();
    let tail = geometric_reduced_path(arr, &antipode, goal)?;
    debug_assert_eq!(tail.steps(), a.len() - 1 - half);
    let glue = |arc: Vec<SignVector>| {
        let mut path = arc;
        path.extend(tail.regions()[1..].iter().cloned());
        path
    };
    let gamma = glue(arc_gamma);
    let rho = glue(arc_rho);
    connect_inner(arr, a, &gamma, offset, log)?;
    log.push(Move {
        kind: MoveKind::Braid,
        position: offset,
        polygon: Some(tau),
    });
    connect_inner(arr, &rho[1..], &b[1..], offset + 1, log)
}

/// Breadth-first walk from one wall of `region` to another through shared
/// ridges, visiting only walls whose hyperplanes separate `region` from
/// `goal`. Returns the hyperplane indices along the walk.
fn wall_sequence(
    arr: &Arrangement,
    region: &SignVector,
    goal: &SignVector,
    from: usize,
    to: usize,
) -> Result<Vec<usize>> {
    let mut walls = Vec::new();
    for h in region.separation(goal) {
        if arr.face_exists(&region.with(h, Sign::Zero))? {
            walls.push(h);
        }
    }
    debug_assert!(walls.contains(&from) && walls.contains(&to));
    let mut previous = vec![usize::MAX; arr.len()];
    previous[from] = from;
    let mut queue = VecDeque::from([from]);
    'search: while let Some(g) = queue.pop_front() {
        for &h in &walls {
            if previous[h] != usize::MAX || ridge_between(arr, region, g, h)?.is_none() {
                continue;
            }
            previous[h] = g;
            if h == to {
                break 'search;
            }
            queue.push_back(h);
        }
    }
    assert_ne!(
        previous[to],
        usize::MAX,
        "separating walls of a region are ridge-connected"
    );
    let mut sequence = vec![to];
    while *sequence.last().expect("nonempty") != from {
        sequence.push(previous[*sequence.last().expect("nonempty")]);
    }
    sequence.reverse();
    Ok(sequence)
}

/// The codimension-two face shared by two walls of a region, if they meet
/// in one.
fn ridge_between(
    arr: &Arrangement,
    region: &SignVector,
    g: usize,
    h: usize,
) -> Result<Option<SignVector>> {
    let pattern = region.with(g, Sign::Zero).with(h, Sign::Zero);
    let meet = arr.face_polyhedron(&pattern)?;
    if meet.dim() != arr.dim() as i64 - 2 {
        return Ok(None);
    }
    let x = meet.relative_interior_point()?;
    Ok(Some(arr.sign_vector_of(&x)?))
}

/// Rewrites a path to a reduced one. Each round locates the first prefix
/// that re-crosses a hyperplane, braids the reduced part of that prefix
/// until the re-crossed wall comes last, and cancels the backtrack with a
/// nil move, shortening the path by two. The returned log rewrites the
/// input into the returned path.
pub fn rewrite_to_reduced(
    arr: &Arrangement,
    path: &GalleryPath,
) -> Result<(GalleryPath, MoveLog)> {
    let mut current = path.clone();
    let mut log = MoveLog::new();
    loop {
        let regions = current.regions();
        let overrun =
            (1..regions.len()).find(|&k| regions[0].separation(&regions[k]).len() < k);
        let Some(k) = overrun else {
            return Ok((current, log));
        };
        // The prefix up to k - 1 is reduced and step k undoes one of its
        // crossings, so some reduced path to regions[k] extended by
        // regions[k - 1] is a braid-reachable version of the prefix that
        // sets up a backtrack at k - 2.
        let rho = geometric_reduced_path(arr, &regions[0], &regions[k])?;
        let mut target = rho.regions().to_vec();
        target.push(regions[k - 1].clone());
        let prefix = GalleryPath {
            regions: regions[..k].to_vec(),
        };
        let target = GalleryPath { regions: target };
        let braids = connect_reduced(arr, &prefix, &target)?;
        for mv in &braids {
            current = apply_move(arr, &current, mv)?;
        }
        log.extend(braids);
        current = apply_nil(&current, k - 2)?;
        log.push(Move {
            kind: MoveKind::Nil,
            position: k - 2,
            polygon: None,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::tests::lines;
    use proptest::prelude::*;

    fn sv(s: &str) -> SignVector {
        s.parse().expect("valid sign vector")
    }

    fn path(arr: &Arrangement, regions: &[&str]) -> GalleryPath {
        GalleryPath::new(arr, regions.iter().map(|s| sv(s)).collect()).expect("valid path")
    }

    /// The two coordinate axes in the plane; four quadrant regions.
    fn axes() -> Arrangement {
        lines(2, &[&[1, 0], &[0, 1]])
    }

    /// Three concurrent lines in the plane; six sector regions.
    fn fan() -> Arrangement {
        lines(2, &[&[1, 0], &[0, 1], &[1, -1]])
    }

    /// Three coordinate planes plus a diagonal plane through the origin;
    /// fourteen regions, some with four walls, two of which meet only in
    /// the origin rather than in a ridge.
    fn space() -> Arrangement {
        lines(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])
    }

    /// Every reduced path between two regions, by crossing one more
    /// separating hyperplane at each step.
    fn reduced_paths(arr: &Arrangement, from: &SignVector, to: &SignVector) -> Vec<GalleryPath> {
        fn go(
            arr: &Arrangement,
            cur: &SignVector,
            to: &SignVector,
            out: &mut Vec<Vec<SignVector>>,
        ) {
            if cur == to {
                out.push(vec![cur.clone()]);
                return;
            }
            for h in cur.separation(to) {
                let next = cur.flipped_at(h);
                if arr.face_exists(&next).expect("same length") {
                    let mut tails = Vec::new();
                    go(arr, &next, to, &mut tails);
                    for mut tail in tails {
                        tail.insert(0, cur.clone());
                        out.push(tail);
                    }
                }
            }
        }
        let mut raw = Vec::new();
        go(arr, from, to, &mut raw);
        raw.into_iter()
            .map(|regions| GalleryPath::new(arr, regions).expect("reduced paths are valid"))
            .collect()
    }

    #[test]
    fn path_validation_rejects_garbage() {
        let arr = axes();
        let empty = GalleryPath::new(&arr, vec![]);
        assert!(matches!(empty, Err(Error::InvalidPath { position: 0, .. })));
        let bogus = GalleryPath::new(&arr, vec![sv("++"), sv("0+")]);
        assert!(matches!(bogus, Err(Error::InvalidPath { position: 1, .. })));
        let jump = GalleryPath::new(&arr, vec![sv("++"), sv("--")]);
        assert!(matches!(jump, Err(Error::InvalidPath { position: 1, .. })));
        let stall = GalleryPath::new(&arr, vec![sv("++"), sv("++")]);
        assert!(matches!(stall, Err(Error::InvalidPath { position: 1, .. })));
        assert_eq!(path(&arr, &["++", "+-"]).steps(), 1);
    }

    #[test]
    fn braid_swaps_the_two_quadrant_routes() {
        let arr = axes();
        let left = path(&arr, &["++", "-+", "--"]);
        let right = path(&arr, &["++", "+-", "--"]);
        let log = connect_reduced(&arr, &left, &right).unwrap();
        assert_eq!(
            log,
            vec![Move {
                kind: MoveKind::Braid,
                position: 0,
                polygon: Some(sv("00")),
            }]
        );
        assert_eq!(apply_moves(&arr, &left, &log).unwrap(), right);
        // The same braid applied again returns to the original path.
        assert_eq!(apply_moves(&arr, &right, &log).unwrap(), left);
    }

    #[test]
    fn braid_and_nil_reject_bad_positions() {
        let arr = axes();
        let p = path(&arr, &["++", "-+", "--"]);
        assert!(matches!(
            apply_braid(&arr, &p, 1, &sv("00")),
            Err(Error::InvalidMove { position: 1, .. })
        ));
        assert!(matches!(
            apply_nil(&p, 0),
            Err(Error::InvalidMove { position: 0, .. })
        ));
        let nameless = Move {
            kind: MoveKind::Braid,
            position: 0,
            polygon: None,
        };
        assert!(matches!(
            apply_move(&arr, &p, &nameless),
            Err(Error::InvalidMove { position: 0, .. })
        ));
        let backtrack = path(&arr, &["++", "-+", "++"]);
        assert_eq!(
            apply_nil(&backtrack, 0).unwrap(),
            path(&arr, &["++"]),
        );
        assert!(matches!(
            apply_braid(&arr, &backtrack, 0, &sv("00")),
            Err(Error::InvalidMove { position: 0, .. })
        ));
    }

    #[test]
    fn connect_requires_matching_reduced_inputs() {
        let arr = axes();
        let a = path(&arr, &["++", "-+", "--"]);
        let b = path(&arr, &["++", "+-"]);
        assert!(matches!(
            connect_reduced(&arr, &a, &b),
            Err(Error::EndpointMismatch)
        ));
        let detour = path(&arr, &["++", "-+", "++", "+-", "--"]);
        let c = path(&arr, &["++", "+-", "--"]);
        assert!(matches!(
            connect_reduced(&arr, &detour, &c),
            Err(Error::NotReduced)
        ));
    }

    #[test]
    fn geometric_paths_are_reduced_between_all_region_pairs() {
        for arr in [axes(), fan(), space()] {
            let regions = arr.regions();
            for q in &regions {
                for r in &regions {
                    let p = geometric_reduced_path(&arr, q, r).unwrap();
                    assert_eq!(p.first(), q);
                    assert_eq!(p.last(), r);
                    assert!(p.is_reduced());
                    // Revalidation checks every visited region and step.
                    GalleryPath::new(&arr, p.regions().to_vec()).unwrap();
                }
            }
        }
    }

    #[test]
    fn hexagon_reduced_pairs_connect() {
        let arr = fan();
        let regions = arr.regions();
        for q in &regions {
            for r in &regions {
                let all = reduced_paths(&arr, q, r);
                assert!(!all.is_empty());
                for a in &all {
                    for b in &all {
                        let log = connect_reduced(&arr, a, b).unwrap();
                        assert!(log.iter().all(|m| m.kind == MoveKind::Braid));
                        assert_eq!(&apply_moves(&arr, a, &log).unwrap(), b);
                    }
                }
            }
        }
    }

    #[test]
    fn skew_walls_connect_through_intermediate_ridges() {
        let arr = space();
        // This region's walls on the first two coordinate planes meet only
        // in the origin, so connecting paths that leave through them must
        // route the wall walk through a third facet.
        let q = sv("++-+");
        assert!(arr.face_exists(&q).unwrap());
        assert_eq!(ridge_between(&arr, &q, 0, 1).unwrap(), None);
        for (from, to) in [(sv("++++"), sv("----")), (q.clone(), q.negated())] {
            let all = reduced_paths(&arr, &from, &to);
            assert!(all.len() > 1);
            for b in &all {
                let log = connect_reduced(&arr, &all[0], b).unwrap();
                assert!(log.iter().all(|m| m.kind == MoveKind::Braid));
                assert_eq!(&apply_moves(&arr, &all[0], &log).unwrap(), b);
            }
        }
    }

    #[test]
    fn rewrite_follows_the_planned_trace() {
        let arr = fan();
        let wandering = path(&arr, &["+++", "+-+", "--+", "---", "-+-", "---"]);
        let (reduced, log) = rewrite_to_reduced(&arr, &wandering).unwrap();
        assert_eq!(reduced, path(&arr, &["+++", "++-", "-+-", "---"]));
        assert_eq!(
            log,
            vec![
                Move {
                    kind: MoveKind::Braid,
                    position: 0,
                    polygon: Some(sv("000")),
                },
                Move {
                    kind: MoveKind::Nil,
                    position: 2,
                    polygon: None,
                },
            ]
        );
        assert_eq!(apply_moves(&arr, &wandering, &log).unwrap(), reduced);
    }

    #[test]
    fn rewrite_cancels_backtracks_without_braids() {
        let arr = axes();
        let backtrack = path(&arr, &["++", "+-", "++", "-+"]);
        let (reduced, log) = rewrite_to_reduced(&arr, &backtrack).unwrap();
        assert_eq!(reduced, path(&arr, &["++", "-+"]));
        assert_eq!(
            log,
            vec![Move {
                kind: MoveKind::Nil,
                position: 0,
                polygon: None,
            }]
        );
        let lap = path(&arr, &["++", "+-", "--", "-+", "++"]);
        let (home, _) = rewrite_to_reduced(&arr, &lap).unwrap();
        assert_eq!(home, path(&arr, &["++"]));
    }

    #[test]
    fn move_logs_serialize_with_polygon_or_null() {
        let braid = Move {
            kind: MoveKind::Braid,
            position: 0,
            polygon: Some(sv("00")),
        };
        let nil = Move {
            kind: MoveKind::Nil,
            position: 2,
            polygon: None,
        };
        let json = serde_json::to_string(&vec![braid.clone(), nil.clone()]).unwrap();
        assert_eq!(
            json,
            r#"[{"kind":"braid","position":0,"polygon":"00"},{"kind":"nil","position":2,"polygon":null}]"#
        );
        let back: MoveLog = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![braid, nil.clone()]);
        // The polygon field may be omitted entirely on input.
        let terse: Move = serde_json::from_str(r#"{"kind":"nil","position":2}"#).unwrap();
        assert_eq!(terse, nil);

        let path = GalleryPath::new(&axes(), vec![sv("++"), sv("-+")]).unwrap();
        assert_eq!(
            serde_json::to_string(&path).unwrap(),
            r#"{"regions":["++","-+"]}"#
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            cases: 48,
            .. ProptestConfig::default()
        })]

        #[test]
        fn random_walks_rewrite_to_reduced(
            which in 0usize..3,
            start in any::<u8>(),
            steps in proptest::collection::vec(any::<u8>(), 1..10),
        ) {
            let arr = match which {
                0 => axes(),
                1 => fan(),
                _ => space(),
            };
            let regions = arr.regions();
            let mut cur = regions[start as usize % regions.len()].clone();
            let mut walk = vec![cur.clone()];
            for s in steps {
                let neighbors: Vec<SignVector> = (0..arr.len())
                    .filter_map(|h| {
                        let next = cur.flipped_at(h);
                        arr.face_exists(&next).expect("same length").then_some(next)
                    })
                    .collect();
                cur = neighbors[s as usize % neighbors.len()].clone();
                walk.push(cur.clone());
            }
            let path = GalleryPath::new(&arr, walk).unwrap();
            let (reduced, log) = rewrite_to_reduced(&arr, &path).unwrap();
            prop_assert!(reduced.is_reduced());
            prop_assert_eq!(reduced.first(), path.first());
            prop_assert_eq!(reduced.last(), path.last());
            prop_assert_eq!(
                reduced.steps(),
                path.first().separation(path.last()).len()
            );
            prop_assert_eq!(&apply_moves(&arr, &path, &log).unwrap(), &reduced);
        }
    }
}
