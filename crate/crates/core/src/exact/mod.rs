//! Exact rational geometry: vectors, halfspaces, polyhedra in halfspace
//! representation, and feasibility via Fourier–Motzkin elimination.
//!
//! All coordinates are arbitrary-precision rationals ([`Rational`] is
//! `num_rational::BigRational`), kept reduced with positive denominators by
//! construction. No operation in this module ever rounds, so emptiness,
//! dimension, and face questions are decided, not estimated.
//!
//! The intended scale is small ambient dimension (at most eight or so) with
//! modest constraint counts; Fourier–Motzkin is exponential in the worst
//! case, but equality substitution runs first and redundant rows are merged
//! after every elimination step, which keeps the systems that actually arise
//! here tiny.

pub(crate) mod linalg;
mod polyhedron;
mod solver;
mod vector;

pub use linalg::{null_space_basis, rank, row_space_basis, rref};
pub use polyhedron::{AffineSubspace, Polyhedron};
pub use solver::{Constraint, LinearSystem, Relation};
pub use vector::Vector;

use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational number. Always stored reduced, with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for the rational `p/q`. Panics if `q == 0`; intended for
/// literals in code and tests, not for parsing untrusted input.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Serde adapter serializing a [`Rational`] as the string `"p/q"`, with the
/// `/q` part omitted when the denominator is one. `"1/0"` and other malformed
/// strings are rejected on input.
pub mod rational_string {
    use super::Rational;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse()
            .map_err(|_| de::Error::custom(format!("malformed rational {raw:?}")))
    }
}

/// A closed halfspace `normal . x >= offset`. The normal must be nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vector,
    #[serde(with = "rational_string")]
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(Halfspace { normal, offset })
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `normal . x - offset`; positive strictly inside, zero on the boundary.
    pub fn evaluate(&self, x: &Vector) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    pub fn contains(&self, x: &Vector) -> bool {
        !self.evaluate(x).is_negative()
    }

    /// The opposite closed halfspace `normal . x <= offset`.
    pub fn flipped(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.neg(),
            offset: -self.offset.clone(),
        }
    }

    /// Canonical key identifying the halfspace up to positive scaling:
    /// integer coefficients with content one.
    pub fn canonical_key(&self) -> (Vector, Rational) {
        canonical_positive_scale(&self.normal, &self.offset)
    }

    /// Canonical key identifying the *hyperplane* `normal . x = offset` up to
    /// arbitrary nonzero scaling: integer, content one, first nonzero
    /// coordinate of the normal positive.
    pub fn hyperplane_key(&self) -> (Vector, Rational) {
        let (n, o) = canonical_positive_scale(&self.normal, &self.offset);
        match n.iter().find(|c| !c.is_zero()) {
            Some(lead) if lead.is_negative() => (n.neg(), -o),
            _ => (n, o),
        }
    }
}

pub(crate) fn canonical_positive_scale(normal: &Vector, offset: &Rational) -> (Vector, Rational) {
    use num_bigint::BigInt;
    use num_integer::Integer;

    let mut lcm = BigInt::one();
    for c in normal.iter().chain(std::iter::once(offset)) {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = normal
        .iter()
        .chain(std::iter::once(offset))
        .map(|c| c.numer() * &lcm / c.denom())
        .collect();
    let mut gcd = BigInt::zero();
    for v in &ints {
        gcd = gcd.gcd(v);
    }
    if gcd.is_zero() {
        gcd = BigInt::one();
    }
    let scaled: Vec<Rational> = ints
        .iter()
        .map(|v| Rational::from_integer(v / &gcd))
        .collect();
    let offset = scaled.last().cloned().expect("offset present");
    (Vector::new(scaled[..scaled.len() - 1].to_vec()), offset)
}

/// Decides whether the closed system given by `constraints` (inequalities
/// `normal . x >= offset`) together with `equalities` (each halfspace read as
/// `normal . x = offset`) has a solution in `R^ambient_dim`.
pub fn feasible(
    constraints: &[Halfspace],
    equalities: &[Halfspace],
    ambient_dim: usize,
) -> Result<bool> {
    let mut system = LinearSystem::new(ambient_dim);
    for h in constraints {
        if h.dim() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: h.dim(),
            });
        }
        system.ge(h.normal.clone(), h.offset.clone());
    }
    for h in equalities {
        if h.dim() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: h.dim(),
            });
        }
        system.eq(h.normal.clone(), h.offset.clone());
    }
    Ok(system.is_feasible())
}
