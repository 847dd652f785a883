//! The ordered monoid Λ̃ of values r, r⁺ and ∞.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::num::{fmt_q, parse_q, Q};

/// r < r⁺ < s < s⁺ < ∞ for r < s; r + s⁺ = (r + s)⁺ and x + ∞ = ∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedValue {
    Value(Q),
    ValuePlus(Q),
    Infinity,
}

impl ExtendedValue {
    pub fn zero() -> Self {
        ExtendedValue::Value(Q::zero())
    }

    pub fn int(n: i64) -> Self {
        ExtendedValue::Value(Q::from_integer(n.into()))
    }

    fn key(&self) -> (u8, Option<&Q>, u8) {
        match self {
            ExtendedValue::Value(r) => (0, Some(r), 0),
            ExtendedValue::ValuePlus(r) => (0, Some(r), 1),
            ExtendedValue::Infinity => (1, None, 0),
        }
    }

    /// The underlying rational of r or r⁺.
    pub fn base(&self) -> Option<&Q> {
        match self {
            ExtendedValue::Value(r) | ExtendedValue::ValuePlus(r) => Some(r),
            ExtendedValue::Infinity => None,
        }
    }

    pub fn is_plus(&self) -> bool {
        matches!(self, ExtendedValue::ValuePlus(_))
    }

    /// Whether a + k ≥ 0 (k = r) or a + k > 0 (k = r⁺); always true for ∞.
    pub fn admits(&self, a: &Q) -> bool {
        match self {
            ExtendedValue::Value(r) => (a + r) >= Q::zero(),
            ExtendedValue::ValuePlus(r) => (a + r) > Q::zero(),
            ExtendedValue::Infinity => true,
        }
    }
}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Add for &ExtendedValue {
    type Output = ExtendedValue;

    fn add(self, o: &ExtendedValue) -> ExtendedValue {
        use ExtendedValue::*;
        match (self, o) {
            (Infinity, _) | (_, Infinity) => Infinity,
            (Value(a), Value(b)) => Value(a + b),
            (ValuePlus(a), Value(b)) | (Value(a), ValuePlus(b)) | (ValuePlus(a), ValuePlus(b)) => ValuePlus(a + b),
        }
    }
}

impl Add for ExtendedValue {
    type Output = ExtendedValue;

    fn add(self, o: ExtendedValue) -> ExtendedValue {
        &self + &o
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Value(r) => f.write_str(&fmt_q(r)),
            ExtendedValue::ValuePlus(r) => write!(f, "{}+", fmt_q(r)),
            ExtendedValue::Infinity => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for ExtendedValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ExtendedValue::Infinity);
        }
        match s.strip_suffix('+') {
            Some(r) => parse_q(r).map(ExtendedValue::ValuePlus).map_err(|e| e.to_string()),
            None => parse_q(s).map(ExtendedValue::Value).map_err(|e| e.to_string()),
        }
    }
}

impl Serialize for ExtendedValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qr;

    #[test]
    fn order_and_addition() {
        let a = ExtendedValue::Value(qr(1, 2));
        let ap = ExtendedValue::ValuePlus(qr(1, 2));
        let b = ExtendedValue::int(1);
        assert!(a < ap && ap < b && b < ExtendedValue::Infinity);
        assert_eq!(&a + &ap, ExtendedValue::ValuePlus(qr(1, 1)));
        assert_eq!(&b + &ExtendedValue::Infinity, ExtendedValue::Infinity);
        for v in [a, ap, b, ExtendedValue::Infinity] {
            assert_eq!(v.to_string().parse::<ExtendedValue>().unwrap(), v);
        }
    }
}
