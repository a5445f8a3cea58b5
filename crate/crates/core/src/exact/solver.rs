//! Feasibility and sample points for mixed strict/weak linear systems via
//! Fourier–Motzkin elimination.
//!
//! The solver substitutes equalities away first (Gaussian elimination), then
//! eliminates one variable per round, always choosing the variable that
//! produces the fewest combined rows and merging duplicate rows after every
//! round. On success it back-substitutes a concrete rational solution,
//! picking interval midpoints so that strict constraints end up strictly
//! satisfied. Everything is deterministic: same system in, same point out.

use super::{Rational, Vector};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

/// One linear condition `coeffs . x REL rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vector,
    pub relation: Relation,
    pub rhs: Rational,
}

/// A conjunction of linear equalities and weak/strict inequalities over
/// `R^dim`.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    dim: usize,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Rational>,
    rhs: Rational,
    strict: bool,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn push(&mut self, c: Constraint) {
        debug_assert_eq!(c.coeffs.dim(), self.dim);
        self.constraints.push(c);
    }

    pub fn eq(&mut self, coeffs: Vector, rhs: Rational) {
        self.push(Constraint {
            coeffs,
            relation: Relation::Eq,
            rhs,
        });
    }

    pub fn ge(&mut self, coeffs: Vector, rhs: Rational) {
        self.push(Constraint {
            coeffs,
            relation: Relation::Ge,
            rhs,
        });
    }

    pub fn gt(&mut self, coeffs: Vector, rhs: Rational) {
        self.push(Constraint {
            coeffs,
            relation: Relation::Gt,
            rhs,
        });
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }

    /// Returns a solution of the system, or `None` when it has none. The
    /// returned point is exact and canonical for the given constraint list.
    pub fn solve(&self) -> Option<Vector> {
        let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
        let mut rows: Vec<Row> = Vec::new();
        for c in &self.constraints {
            match c.relation {
                Relation::Eq => eqs.push((c.coeffs.coords().to_vec(), c.rhs.clone())),
                Relation::Ge | Relation::Gt => rows.push(Row {
                    coeffs: c.coeffs.coords().to_vec(),
                    rhs: c.rhs.clone(),
                    strict: c.relation == Relation::Gt,
                }),
            }
        }

        let mut active = vec![true; self.dim];
        // Substituted equalities, in elimination order: (pivot, coeffs, rhs)
        // with x_pivot = (rhs - sum of the other terms) / coeffs[pivot].
        let mut eq_subs: Vec<(usize, Vec<Rational>, Rational)> = Vec::new();
        let mut pending = std::collections::VecDeque::from(eqs);
        while let Some((coeffs, rhs)) = pending.pop_front() {
            let Some(pivot) = coeffs.iter().position(|c| !c.is_zero()) else {
                if rhs.is_zero() {
                    continue;
                }
                return None;
            };
            substitute(&mut pending, pivot, &coeffs, &rhs);
            for row in &mut rows {
                substitute_row(row, pivot, &coeffs, &rhs);
            }
            active[pivot] = false;
            eq_subs.push((pivot, coeffs, rhs));
        }

        // One elimination stage per variable that still occurs in a row.
        let mut stages: Vec<(usize, Vec<Row>, Vec<Row>)> = Vec::new();
        loop {
            rows = normalize(rows)?;
            let Some(var) = pick_variable(&rows, &active) else {
                break;
            };
            active[var] = false;
            let mut lows = Vec::new();
            let mut ups = Vec::new();
            let mut rest = Vec::new();
            for row in rows {
                if row.coeffs[var].is_positive() {
                    lows.push(row);
                } else if row.coeffs[var].is_negative() {
                    ups.push(row);
                } else {
                    rest.push(row);
                }
            }
            for low in &lows {
                for up in &ups {
                    rest.push(combine(low, up, var));
                }
            }
            stages.push((var, lows, ups));
            rows = rest;
        }

        // The projected system is satisfiable; rebuild a witness from the
        // innermost stage outward. Variables never mentioned anywhere stay
        // at zero.
        let mut value: Vec<Option<Rational>> = vec![None; self.dim];
        for (v, slot) in value.iter_mut().enumerate() {
            if active[v] {
                *slot = Some(Rational::zero());
            }
        }
        for (var, lows, ups) in stages.iter().rev() {
            let lo = lows
                .iter()
                .map(|r| bound(r, *var, &value))
                .max_by(tighter_low);
            let hi = ups
                .iter()
                .map(|r| bound(r, *var, &value))
                .min_by(tighter_up);
            value[*var] = Some(pick_between(lo, hi));
        }
        for (pivot, coeffs, rhs) in eq_subs.iter().rev() {
            let mut acc = rhs.clone();
            for (i, c) in coeffs.iter().enumerate() {
                if i != *pivot && !c.is_zero() {
                    acc -= c * value[i].as_ref().expect("later variable assigned");
                }
            }
            value[*pivot] = Some(acc / &coeffs[*pivot]);
        }
        Some(Vector::new(
            value.into_iter().map(Option::unwrap).collect(),
        ))
    }
}

/// Eliminates `pivot` from every queued equality using the equation
/// `coeffs . x = rhs`.
fn substitute(
    queue: &mut std::collections::VecDeque<(Vec<Rational>, Rational)>,
    pivot: usize,
    coeffs: &[Rational],
    rhs: &Rational,
) {
    for (row, row_rhs) in queue.iter_mut() {
        if row[pivot].is_zero() {
            continue;
        }
        let factor = &row[pivot] / &coeffs[pivot];
        for (i, c) in coeffs.iter().enumerate() {
            let delta = &factor * c;
            row[i] -= delta;
        }
        *row_rhs -= &factor * rhs;
    }
}

fn substitute_row(row: &mut Row, pivot: usize, coeffs: &[Rational], rhs: &Rational) {
    if row.coeffs[pivot].is_zero() {
        return;
    }
    let factor = &row.coeffs[pivot] / &coeffs[pivot];
    for (i, c) in coeffs.iter().enumerate() {
        let delta = &factor * c;
        row.coeffs[i] -= delta;
    }
    row.rhs -= &factor * rhs;
}

/// Drops satisfied constant rows, rejects violated ones, rescales every row
/// to primitive integer coefficients, and keeps only the strongest row per
/// coefficient pattern. Returns `None` on a contradiction.
fn normalize(rows: Vec<Row>) -> Option<Vec<Row>> {
    use std::collections::BTreeMap;
    let mut best: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
    for row in rows {
        if row.coeffs.iter().all(Zero::is_zero) {
            let ok = if row.strict {
                row.rhs.is_negative()
            } else {
                !row.rhs.is_positive()
            };
            if ok {
                continue;
            }
            return None;
        }
        let prim = Vector::new(row.coeffs.clone()).primitive();
        // primitive() rescales by a positive factor; recover it from the
        // first nonzero coordinate to scale the right-hand side to match.
        let lead = row.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero row");
        let factor = &prim[lead] / &row.coeffs[lead];
        let rhs = &row.rhs * &factor;
        let key = prim.coords().to_vec();
        match best.get_mut(&key) {
            None => {
                best.insert(key, (rhs, row.strict));
            }
            Some(entry) => {
                if rhs > entry.0 {
                    *entry = (rhs, row.strict);
                } else if rhs == entry.0 {
                    entry.1 |= row.strict;
                }
            }
        }
    }
    Some(
        best.into_iter()
            .map(|(coeffs, (rhs, strict))| Row { coeffs, rhs, strict })
            .collect(),
    )
}

/// Next variable to eliminate: fewest combined rows, ties to the smallest
/// index. `None` when no active variable occurs in any row.
fn pick_variable(rows: &[Row], active: &[bool]) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (v, &live) in active.iter().enumerate() {
        if !live {
            continue;
        }
        let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
        let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
        if pos + neg == 0 {
            continue;
        }
        let cost = pos * neg;
        if best.is_none_or(|(_, c)| cost < c) {
            best = Some((v, cost));
        }
    }
    best.map(|(v, _)| v)
}

/// Positive combination of a lower row (`coeffs[var] > 0`) and an upper row
/// (`coeffs[var] < 0`) cancelling `var`.
fn combine(low: &Row, up: &Row, var: usize) -> Row {
    let factor = -&up.coeffs[var] / &low.coeffs[var];
    let coeffs = up
        .coeffs
        .iter()
        .zip(&low.coeffs)
        .map(|(u, l)| u + &factor * l)
        .collect();
    Row {
        coeffs,
        rhs: &up.rhs + &factor * &low.rhs,
        strict: low.strict || up.strict,
    }
}

/// The bound this row places on `var` once every other mentioned variable
/// has a value: `(value, strict)`.
fn bound(row: &Row, var: usize, value: &[Option<Rational>]) -> (Rational, bool) {
    let mut acc = row.rhs.clone();
    for (i, c) in row.coeffs.iter().enumerate() {
        if i != var && !c.is_zero() {
            acc -= c * value[i].as_ref().expect("later variable assigned");
        }
    }
    (acc / &row.coeffs[var], row.strict)
}

fn tighter_low(a: &(Rational, bool), b: &(Rational, bool)) -> std::cmp::Ordering {
    // Among equal lower bounds the strict one is the larger (tighter).
    (&a.0, a.1).cmp(&(&b.0, b.1))
}

fn tighter_up(a: &(Rational, bool), b: &(Rational, bool)) -> std::cmp::Ordering {
    // Among equal upper bounds the strict one is the smaller (tighter).
    (&a.0, !a.1).cmp(&(&b.0, !b.1))
}

fn pick_between(lo: Option<(Rational, bool)>, hi: Option<(Rational, bool)>) -> Rational {
    let one = Rational::one;
    match (lo, hi) {
        (None, None) => Rational::zero(),
        (Some((l, strict)), None) => {
            if strict {
                l + one()
            } else {
                l
            }
        }
        (None, Some((h, strict))) => {
            if strict {
                h - one()
            } else {
                h
            }
        }
        (Some((l, ls)), Some((h, hs))) => {
            if l == h {
                debug_assert!(!ls && !hs, "empty interval survived elimination");
                l
            } else {
                debug_assert!(l < h, "inverted interval survived elimination");
                (l + h) / (one() + one())
            }
        }
    }
}
