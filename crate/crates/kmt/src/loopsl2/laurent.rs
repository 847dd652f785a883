//! Laurent polynomials (and truncated Laurent series) in t, and square matrices over them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::num::{fmt_q, parse_q, CoefficientRing, Q};

use super::LoopError;

/// Σ c_d t^d with finitely many nonzero coefficients, normalized in a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, Q>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(deg: i64, c: Q) -> Self {
        let mut l = Laurent::zero();
        l.add_term(deg, c);
        l
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Q)>) -> Self {
        let mut l = Laurent::zero();
        for (d, c) in terms {
            l.add_term(d, c);
        }
        l
    }

    pub fn terms(&self) -> &BTreeMap<i64, Q> {
        &self.terms
    }

    pub fn coeff(&self, d: i64) -> Q {
        self.terms.get(&d).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn add_term(&mut self, d: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(d).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    /// Lowest degree (the t-adic order), `None` for zero.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest degree, `None` for zero.
    pub fn deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<(i64, &Q)> {
        self.terms.iter().next_back().map(|(d, c)| (*d, c))
    }

    pub fn normalize(&self, ring: &CoefficientRing) -> Result<Self, LoopError> {
        let mut out = Laurent::zero();
        for (d, c) in &self.terms {
            out.add_term(*d, ring.from_q(c)?);
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &o.terms {
            out.add_term(*d, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Laurent::from_terms(self.terms.iter().map(|(d, x)| (*d, x * c)))
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Laurent::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &o.terms {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }

    /// Drops the terms of degree > `max`.
    pub fn truncate(&self, max: i64) -> Self {
        Laurent { terms: self.terms.range(..=max).map(|(d, c)| (*d, c.clone())).collect() }
    }

    /// Substitutes t ↦ t^k (k ≠ 0).
    pub fn substitute_power(&self, k: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(d, c)| (d * k, c.clone())).collect() }
    }

    /// Divides every exponent by k, failing when one is not divisible.
    pub fn divide_exponents(&self, k: i64) -> Option<Self> {
        if self.terms.keys().any(|d| d % k != 0) {
            return None;
        }
        Some(Laurent { terms: self.terms.iter().map(|(d, c)| (d / k, c.clone())).collect() })
    }

    /// Euclidean division in K[t] (both operands polynomials, divisor nonzero): self = q·o + r.
    pub fn div_rem(&self, o: &Self) -> (Self, Self) {
        let (dd, lc) = o.leading().expect("nonzero divisor");
        let lc = lc.clone();
        let mut r = self.clone();
        let mut qt = Laurent::zero();
        while let Some((d, c)) = r.leading() {
            if d < dd {
                break;
            }
            let f = Laurent::monomial(d - dd, c / &lc);
            r = r.sub(&f.mul(o));
            qt = qt.add(&f);
        }
        (qt, r)
    }

    /// The inverse of a power series with invertible constant term, up to degree `prec`.
    pub fn series_inverse(&self, prec: i64) -> Option<Self> {
        if !self.is_polynomial() || self.coeff(0).is_zero() {
            return None;
        }
        let c0 = Q::one() / self.coeff(0);
        let mut inv = Laurent::constant(c0.clone());
        for k in 1..=prec {
            let s: Q = (1..=k).map(|j| self.coeff(j) * inv.coeff(k - j)).sum();
            inv.add_term(k, -s * &c0);
        }
        Some(inv)
    }

    pub fn is_polynomial(&self) -> bool {
        self.ord().map_or(true, |d| d >= 0)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.terms
            .iter()
            .map(|(d, c)| {
                if *d >= 0 {
                    c * num_traits::pow(x.clone(), *d as usize)
                } else {
                    c / num_traits::pow(x.clone(), (-d) as usize)
                }
            })
            .sum()
    }

    /// The image under the coefficient map `f`.
    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> Self {
        Laurent::from_terms(self.terms.iter().map(|(d, c)| (*d, f(c))))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| match *d {
                0 => fmt_q(c),
                1 if c.is_one() => "t".to_string(),
                1 => format!("{}t", fmt_q(c)),
                _ if c.is_one() => format!("t^{d}"),
                _ => format!("{}t^{d}", fmt_q(c)),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub deg: i64,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentMatrixJson {
    pub m: usize,
    pub entries: Vec<Vec<Vec<TermJson>>>,
    pub window: Option<[i64; 2]>,
}

/// An m × m matrix over K[t, t⁻¹]; with a precision `prec`, entries are Laurent series known
/// only up to degree `prec` (terms above it are dropped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    ring: CoefficientRing,
    entries: Vec<Vec<Laurent>>,
    prec: Option<i64>,
}

impl LaurentMatrix {
    pub fn new(ring: CoefficientRing, entries: Vec<Vec<Laurent>>, prec: Option<i64>) -> Result<Self, LoopError> {
        let m = entries.len();
        if m == 0 || entries.iter().any(|r| r.len() != m) {
            return Err(LoopError::Shape);
        }
        let mut entries: Vec<Vec<Laurent>> = entries
            .iter()
            .map(|r| r.iter().map(|x| x.normalize(&ring)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        if let Some(p) = prec {
            for row in &mut entries {
                for x in row.iter_mut() {
                    *x = x.truncate(p);
                }
            }
        }
        Ok(LaurentMatrix { ring, entries, prec })
    }

    pub fn identity(ring: CoefficientRing, m: usize, prec: Option<i64>) -> Self {
        let entries = (0..m)
            .map(|i| (0..m).map(|j| if i == j { Laurent::one() } else { Laurent::zero() }).collect())
            .collect();
        LaurentMatrix { ring, entries, prec }
    }

    /// The 2 × 2 matrix (a b; c d).
    pub fn sl2(ring: CoefficientRing, a: Laurent, b: Laurent, c: Laurent, d: Laurent) -> Result<Self, LoopError> {
        Self::new(ring, vec![vec![a, b], vec![c, d]], None)
    }

    /// u^s(q) = (1 q; 0 1).
    pub fn upper(ring: CoefficientRing, q: Laurent) -> Result<Self, LoopError> {
        Self::sl2(ring, Laurent::one(), q, Laurent::zero(), Laurent::one())
    }

    /// u^i(r) = (1 0; r 1).
    pub fn lower(ring: CoefficientRing, r: Laurent) -> Result<Self, LoopError> {
        Self::sl2(ring, Laurent::one(), Laurent::zero(), r, Laurent::one())
    }

    pub fn diagonal(ring: CoefficientRing, diag: Vec<Laurent>, prec: Option<i64>) -> Result<Self, LoopError> {
        let m = diag.len();
        let entries = diag
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                let mut row = vec![Laurent::zero(); m];
                row[i] = x;
                row
            })
            .collect();
        Self::new(ring, entries, prec)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn entry(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Laurent>] {
        &self.entries
    }

    /// Same entries with a (tighter) precision.
    pub fn with_prec(&self, prec: i64) -> Self {
        let p = self.prec.map_or(prec, |q| q.min(prec));
        LaurentMatrix {
            ring: self.ring,
            entries: self.entries.iter().map(|r| r.iter().map(|x| x.truncate(p)).collect()).collect(),
            prec: Some(p),
        }
    }

    fn min_ord(&self) -> i64 {
        self.entries.iter().flatten().filter_map(Laurent::ord).min().unwrap_or(0)
    }

    fn check(&self, o: &Self) -> Result<(), LoopError> {
        if self.size() != o.size() {
            return Err(LoopError::Shape);
        }
        if self.ring != o.ring {
            return Err(LoopError::RingMismatch);
        }
        Ok(())
    }

    fn finish(&self, entries: Vec<Vec<Laurent>>, prec: Option<i64>) -> Self {
        let entries = entries
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        let x = x.normalize(&self.ring).expect("closed under ring operations");
                        prec.map_or(x.clone(), |p| x.truncate(p))
                    })
                    .collect()
            })
            .collect();
        LaurentMatrix { ring: self.ring, entries, prec }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, LoopError> {
        self.check(o)?;
        let m = self.size();
        let prec = match (self.prec, o.prec) {
            (None, None) => None,
            (Some(p), None) => Some(p + o.min_ord()),
            (None, Some(p)) => Some(p + self.min_ord()),
            (Some(p), Some(q)) => Some((p + o.min_ord()).min(q + self.min_ord())),
        };
        let mut out = vec![vec![Laurent::zero(); m]; m];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                for k in 0..m {
                    *x = x.add(&self.entries[i][k].mul(&o.entries[k][j]));
                }
            }
        }
        Ok(self.finish(out, prec))
    }

    pub fn add(&self, o: &Self) -> Result<Self, LoopError> {
        self.check(o)?;
        let prec = match (self.prec, o.prec) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (p, q) => p.or(q),
        };
        let out = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect())
            .collect();
        Ok(self.finish(out, prec))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, LoopError> {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let out = self.entries.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect();
        self.finish(out, self.prec)
    }

    pub fn pow(&self, n: u32) -> Result<Self, LoopError> {
        let mut acc = Self::identity(self.ring, self.size(), None);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Determinant by cofactor expansion (m is small).
    pub fn det(&self) -> Laurent {
        fn rec(m: &[Vec<Laurent>]) -> Laurent {
            match m.len() {
                1 => m[0][0].clone(),
                n => {
                    let mut acc = Laurent::zero();
                    for j in 0..n {
                        if m[0][j].is_zero() {
                            continue;
                        }
                        let minor: Vec<Vec<Laurent>> = m[1..]
                            .iter()
                            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                            .collect();
                        let t = m[0][j].mul(&rec(&minor));
                        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
                    }
                    acc
                }
            }
        }
        let d = rec(&self.entries).normalize(&self.ring).expect("ring closed");
        self.prec.map_or(d.clone(), |p| d.truncate(p + (self.size() as i64 - 1) * self.min_ord().min(0)))
    }

    /// Whether det = 1 (within the precision for series).
    pub fn has_unit_det(&self) -> bool {
        self.det().is_one()
    }

    /// Inverse of a determinant-one matrix via the adjugate.
    pub fn inverse(&self) -> Result<Self, LoopError> {
        if !self.has_unit_det() {
            return Err(LoopError::NotSpecialLinear);
        }
        let m = self.size();
        if m == 1 {
            return Ok(self.clone());
        }
        let mut out = vec![vec![Laurent::zero(); m]; m];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                // (adj A)_{ij} = (−1)^{i+j} det(A with row j and column i removed).
                let minor: Vec<Vec<Laurent>> = self
                    .entries
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != j)
                    .map(|(_, r)| r.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, y)| y.clone()).collect())
                    .collect();
                let sub = LaurentMatrix { ring: self.ring, entries: minor, prec: None };
                let d = sub.det();
                *x = if (i + j) % 2 == 0 { d } else { d.neg() };
            }
        }
        let prec = self.prec.map(|p| p + (m as i64 - 2) * self.min_ord().min(0));
        Ok(self.finish(out, prec))
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
    }

    pub fn to_json(&self) -> LaurentMatrixJson {
        let entries = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.terms().iter().map(|(d, c)| TermJson { deg: *d, coeff: fmt_q(c) }).collect())
                    .collect()
            })
            .collect();
        LaurentMatrixJson { m: self.size(), entries, window: self.prec.map(|p| [self.min_ord().min(0), p]) }
    }

    pub fn from_json(ring: CoefficientRing, j: &LaurentMatrixJson) -> Result<Self, LoopError> {
        let entries = j
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|ts| {
                        ts.iter()
                            .map(|t| Ok((t.deg, parse_q(&t.coeff)?)))
                            .collect::<Result<Vec<_>, LoopError>>()
                            .map(Laurent::from_terms)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() != j.m {
            return Err(LoopError::Shape);
        }
        Self::new(ring, entries, j.window.map(|w| w[1]))
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "({})", rows.join("; "))?;
        if let Some(p) = self.prec {
            write!(f, " + O(t^{})", p + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    #[test]
    fn division_and_inverse() {
        let a = Laurent::from_terms([(0, q(1)), (2, q(3))]);
        let b = Laurent::from_terms([(1, q(2))]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt.mul(&b).add(&r), a);
        assert_eq!(r, Laurent::one());
        let g = LaurentMatrix::sl2(
            CoefficientRing::Rationals,
            Laurent::one(),
            Laurent::monomial(1, q(1)),
            Laurent::zero(),
            Laurent::one(),
        )
        .unwrap();
        assert!(g.mul(&g.inverse().unwrap()).unwrap().is_identity());
    }
}
