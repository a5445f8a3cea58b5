//! Sign vectors: the combinatorial addresses of faces.
//!
//! A face of a hyperplane arrangement is recorded by its sign pattern, one
//! of `+`, `0`, `-` per hyperplane, written as a string like `"+0-"`. The
//! same type doubles as a covector in the oriented matroid layer.
//!
//! Signs order as `+` before `0` before `-`, and sign vectors
//! lexicographically on top of that. Every canonical choice in this crate
//! (first region of a polygon cycle, witness selection, output ordering)
//! refers to this order.

use crate::error::Error;
use crate::exact::Rational;
use num_traits::Signed;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_positive() {
            Sign::Plus
        } else if r.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Zero => Sign::Zero,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Zero => '0',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '0' => Some(Sign::Zero),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// A vector of signs, one per hyperplane (or ground set element).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignVector(signs)
    }

    pub fn zero(len: usize) -> Self {
        SignVector(vec![Sign::Zero; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        self.0[i] = s;
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    /// Copy with position `i` replaced.
    pub fn with(&self, i: usize, s: Sign) -> SignVector {
        let mut out = self.clone();
        out.0[i] = s;
        out
    }

    /// Copy with position `i` sign-flipped.
    pub fn flipped_at(&self, i: usize) -> SignVector {
        self.with(i, self.0[i].flip())
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Zero)
    }

    pub fn is_zero_free(&self) -> bool {
        self.0.iter().all(|&s| s != Sign::Zero)
    }

    /// Indices carrying `0`.
    pub fn zeros(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] == Sign::Zero).collect()
    }

    /// Indices carrying `+` or `-`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != Sign::Zero).collect()
    }

    /// Separation set: indices where both vectors are nonzero with opposite
    /// signs.
    pub fn separation(&self, other: &SignVector) -> Vec<usize> {
        debug_assert_eq!(self.len(), other.len());
        (0..self.len())
            .filter(|&i| {
                let (a, b) = (self.0[i], other.0[i]);
                a != Sign::Zero && b == a.flip()
            })
            .collect()
    }

    /// Face order: `self <= other` when every coordinate of `self` is zero
    /// or agrees with the corresponding coordinate of `other`.
    pub fn leq(&self, other: &SignVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| a == Sign::Zero || a == b)
    }

    /// Composition `self o other`: coordinatewise, `self` where nonzero,
    /// `other` elsewhere.
    pub fn compose(&self, other: &SignVector) -> SignVector {
        debug_assert_eq!(self.len(), other.len());
        SignVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| if a == Sign::Zero { b } else { a })
                .collect(),
        )
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self, Error> {
        raw.chars()
            .map(|c| {
                Sign::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("invalid sign character {c:?} in {raw:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["", "+", "0", "-", "+0-", "++--00"] {
            assert_eq!(sv(s).to_string(), s);
        }
        assert!("+x".parse::<SignVector>().is_err());
        let json = serde_json::to_string(&sv("+0-")).unwrap();
        assert_eq!(json, r#""+0-""#);
        assert_eq!(serde_json::from_str::<SignVector>(&json).unwrap(), sv("+0-"));
    }

    #[test]
    fn face_order_and_composition() {
        assert!(sv("0+0").leq(&sv("-++")));
        assert!(!sv("0+0").leq(&sv("-0+")));
        assert!(sv("000").leq(&sv("+-+")));
        assert_eq!(sv("0+0").compose(&sv("-0-")), sv("-+-"));
        assert_eq!(sv("+-0").compose(&sv("000")), sv("+-0"));
    }

    #[test]
    fn separation_and_support() {
        let x = sv("++-0");
        let y = sv("-+0+");
        assert_eq!(x.separation(&y), vec![0]);
        assert_eq!(y.separation(&x), vec![0]);
        assert_eq!(x.zeros(), vec![3]);
        assert_eq!(x.support(), vec![0, 1, 2]);
        assert!(sv("+-").is_zero_free());
        assert!(!x.is_zero_free());
        assert_eq!(x.negated(), sv("--+0"));
    }

    #[test]
    fn canonical_order_puts_plus_first() {
        assert!(sv("++") < sv("+-"));
        assert!(sv("+-") < sv("-+"));
        assert!(sv("-+") < sv("--"));
        assert!(sv("+0") < sv("+-"));
        assert!(sv("+0") > sv("++"));
    }
}
