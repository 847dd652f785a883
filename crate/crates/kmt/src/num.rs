//! Exact scalars: big rationals, coefficient rings and the discretely valued field model.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Q = BigRational;
pub type Z = BigInt;

pub fn z(n: i64) -> Z {
    Z::from(n)
}

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn qz(n: Z) -> Q {
    Q::from_integer(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{value} is not invertible in {ring}")]
    NotInvertible { value: String, ring: String },
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_q(s: &str) -> Result<Q, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Z = n.trim().parse().map_err(|_| err())?;
            let d: Z = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(qz(s.parse().map_err(|_| err())?)),
    }
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn factorial(n: u32) -> Z {
    (1..=n).fold(Z::one(), |acc, k| acc * Z::from(k))
}

/// Generalized binomial coefficient binom(x, k) = x(x-1)...(x-k+1)/k! for rational x.
pub fn binom_q(x: &Q, k: u32) -> Q {
    let mut acc = Q::one();
    for j in 0..k {
        acc *= x - q(j as i64);
        acc /= q(j as i64 + 1);
    }
    acc
}

pub fn binom(n: i64, k: u32) -> Z {
    binom_q(&q(n), k).to_integer()
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(x: &Z, p: u64) -> u64 {
    let p = Z::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

/// The field ℚ with the p-adic valuation ω = v_p, uniformizer ϖ = p and value group Λ = ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValuedFieldModel {
    pub p: u64,
}

impl Default for ValuedFieldModel {
    fn default() -> Self {
        ValuedFieldModel { p: 2 }
    }
}

impl ValuedFieldModel {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(ValuedFieldModel { p })
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    /// ω(x), with `None` standing for ω(0) = ∞.
    pub fn valuation(&self, x: &Q) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        Some(vp_int(x.numer(), self.p) as i64 - vp_int(x.denom(), self.p) as i64)
    }

    /// Membership in the valuation ring 𝒪.
    pub fn in_o(&self, x: &Q) -> bool {
        self.valuation(x).map_or(true, |v| v >= 0)
    }

    /// ω(x) ≥ k.
    pub fn val_at_least(&self, x: &Q, k: i64) -> bool {
        self.valuation(x).map_or(true, |v| v >= k)
    }

    pub fn is_unit(&self, x: &Q) -> bool {
        self.valuation(x) == Some(0)
    }

    pub fn uniformizer(&self) -> Q {
        q(self.p as i64)
    }

    /// ϖ^k for any integer k.
    pub fn pi_pow(&self, k: i64) -> Q {
        let base = q(self.p as i64);
        if k >= 0 {
            num_traits::pow(base, k as usize)
        } else {
            Q::one() / num_traits::pow(base, (-k) as usize)
        }
    }
}

/// Exact coefficient rings. Values of every ring are stored as normalized rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Rationals,
    Integers,
    PrimeField(u64),
    ValuedField(ValuedFieldModel),
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::PrimeField(p) => write!(f, "F_{p}"),
            CoefficientRing::ValuedField(m) => write!(f, "(Q, v_{})", m.p),
        }
    }
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Maps a rational into the ring (reduction mod p for prime fields).
    pub fn from_q(&self, x: &Q) -> Result<Q, ScalarError> {
        match self {
            CoefficientRing::Rationals | CoefficientRing::ValuedField(_) => Ok(x.clone()),
            CoefficientRing::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(ScalarError::NotInRing { value: fmt_q(x), ring: self.to_string() })
                }
            }
            CoefficientRing::PrimeField(p) => {
                let pz = Z::from(*p);
                let den = x.denom().mod_floor(&pz);
                if den.is_zero() {
                    return Err(ScalarError::NotInRing { value: fmt_q(x), ring: self.to_string() });
                }
                let inv = mod_inverse(&den, &pz).expect("prime modulus");
                Ok(qz((x.numer() * inv).mod_floor(&pz)))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Q {
        self.from_q(&q(n)).expect("integers embed in every ring")
    }

    pub fn from_z(&self, n: &Z) -> Q {
        self.from_q(&qz(n.clone())).expect("integers embed in every ring")
    }

    pub fn norm(&self, x: Q) -> Q {
        match self {
            CoefficientRing::PrimeField(p) => {
                let pz = Z::from(*p);
                debug_assert!(x.is_integer());
                qz(x.to_integer().mod_floor(&pz))
            }
            _ => x,
        }
    }

    pub fn add(&self, a: &Q, b: &Q) -> Q {
        self.norm(a + b)
    }

    pub fn sub(&self, a: &Q, b: &Q) -> Q {
        self.norm(a - b)
    }

    pub fn mul(&self, a: &Q, b: &Q) -> Q {
        self.norm(a * b)
    }

    pub fn neg(&self, a: &Q) -> Q {
        self.norm(-a)
    }

    pub fn pow(&self, a: &Q, n: u32) -> Q {
        let mut acc = self.from_int(1);
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn inv(&self, a: &Q) -> Result<Q, ScalarError> {
        let bad = || ScalarError::NotInvertible { value: fmt_q(a), ring: self.to_string() };
        if a.is_zero() {
            return Err(bad());
        }
        match self {
            CoefficientRing::Integers => {
                if a.abs().is_one() {
                    Ok(a.clone())
                } else {
                    Err(bad())
                }
            }
            CoefficientRing::PrimeField(_) => self.from_q(&(Q::one() / a)),
            _ => Ok(Q::one() / a),
        }
    }

    /// Whether `x` is (already) a normalized element of this ring.
    pub fn contains(&self, x: &Q) -> bool {
        match self {
            CoefficientRing::Rationals | CoefficientRing::ValuedField(_) => true,
            CoefficientRing::Integers => x.is_integer(),
            CoefficientRing::PrimeField(p) => {
                x.is_integer() && !x.is_negative() && x.to_integer() < Z::from(*p)
            }
        }
    }

    pub fn valuation_model(&self) -> Option<ValuedFieldModel> {
        match self {
            CoefficientRing::ValuedField(m) => Some(*m),
            _ => None,
        }
    }

    /// Parses `Q`, `Z`, `F_p`/`Fp`, or `Qv_p`.
    pub fn parse(s: &str) -> Result<Self, ScalarError> {
        let s = s.trim();
        match s {
            "Q" | "QQ" | "rationals" => return Ok(CoefficientRing::Rationals),
            "Z" | "ZZ" | "integers" => return Ok(CoefficientRing::Integers),
            _ => {}
        }
        let num = |t: &str| t.parse::<u64>().map_err(|_| ScalarError::Parse(s.to_string()));
        if let Some(rest) = s.strip_prefix("F_").or_else(|| s.strip_prefix('F')) {
            return Self::prime_field(num(rest)?);
        }
        if let Some(rest) = s.strip_prefix("Qv_") {
            return Ok(CoefficientRing::ValuedField(ValuedFieldModel::new(num(rest)?)?));
        }
        Err(ScalarError::Parse(s.to_string()))
    }
}

pub fn mod_inverse(a: &Z, m: &Z) -> Option<Z> {
    let e = a.extended_gcd(m);
    if e.gcd.abs().is_one() {
        Some((e.x * e.gcd).mod_floor(m))
    } else {
        None
    }
}

/// Least common multiple of the denominators of a rational vector.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Q>>(xs: I) -> Z {
    xs.into_iter().fold(Z::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn to_i64(x: &Z) -> Option<i64> {
    x.to_i64()
}

/// ⌈x⌉ for a rational x.
pub fn ceil_q(x: &Q) -> Z {
    x.ceil().to_integer()
}

/// ⌊x⌋ for a rational x.
pub fn floor_q(x: &Q) -> Z {
    x.floor().to_integer()
}

/// Serde adapters writing rationals as "p/q" strings.
pub mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }

    /// The same for `Vec<Q>`.
    pub mod vec {
        use super::super::{fmt_q, parse_q, Q};
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
            xs.iter().map(fmt_q).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter().map(|s| parse_q(s).map_err(serde::de::Error::custom)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7", "1/3", "-5/2"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(fmt_q(&parse_q("4/2").unwrap()), "2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom(5, 2), z(10));
        assert_eq!(binom(-1, 3), z(-1));
        assert_eq!(binom(0, 2), z(0));
        assert_eq!(binom(-2, 2), z(3));
        assert_eq!(binom_q(&qr(1, 2), 2), qr(-1, 8));
    }

    #[test]
    fn prime_field_reduction() {
        let f = CoefficientRing::prime_field(5).unwrap();
        assert_eq!(f.from_q(&qr(1, 2)).unwrap(), q(3));
        assert_eq!(f.from_int(-1), q(4));
        assert!(f.from_q(&qr(1, 5)).is_err());
        assert_eq!(f.inv(&q(2)).unwrap(), q(3));
        assert!(CoefficientRing::prime_field(6).is_err());
    }

    #[test]
    fn valuation_model() {
        let m = ValuedFieldModel::new(2).unwrap();
        assert_eq!(m.valuation(&qr(12, 5)), Some(2));
        assert_eq!(m.valuation(&qr(3, 8)), Some(-3));
        assert_eq!(m.valuation(&q(0)), None);
        assert!(m.in_o(&qr(1, 3)));
        assert!(!m.in_o(&qr(1, 2)));
        assert_eq!(m.pi_pow(-2), qr(1, 4));
        assert_eq!(m.valuation(&m.uniformizer()), Some(1));
    }

    #[test]
    fn ring_parsing() {
        assert_eq!(CoefficientRing::parse("F_2").unwrap(), CoefficientRing::PrimeField(2));
        assert_eq!(CoefficientRing::parse("Z").unwrap(), CoefficientRing::Integers);
        assert!(CoefficientRing::parse("F_4").is_err());
    }
}
