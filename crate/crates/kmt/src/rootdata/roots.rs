use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{KacMoodyMatrix, RootDataError, RootDatum, ROOT_CAP};

/// An element of Q = ⊕ ℤα_i in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSign {
    Positive,
    Negative,
    Zero,
    Mixed,
}

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        Root((0..rank).map(|k| i64::from(k == i)).collect())
    }

    pub fn zero(rank: usize) -> Root {
        Root(vec![0; rank])
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn sign(&self) -> RootSign {
        let pos = self.0.iter().any(|&c| c > 0);
        let neg = self.0.iter().any(|&c| c < 0);
        match (pos, neg) {
            (true, false) => RootSign::Positive,
            (false, true) => RootSign::Negative,
            (false, false) => RootSign::Zero,
            (true, true) => RootSign::Mixed,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == RootSign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == RootSign::Negative
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Root {
        self.scale(-1)
    }

    /// p·self + q·other
    pub fn combo(&self, p: i64, other: &Root, q: i64) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| p * a + q * b).collect())
    }

    /// Indices with nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// The simple reflection s_i(α) = α − ⟨α, α_i^∨⟩ α_i.
    pub fn reflect(&self, a: &KacMoodyMatrix, i: usize) -> Root {
        let mut out = self.0.clone();
        out[i] -= a.pairing(&self.0, i);
        Root(out)
    }

    /// Height-then-lexicographic ordering key used for every deterministic listing.
    pub fn order_key(&self) -> (i64, Vec<i64>) {
        (self.height().abs(), self.0.clone())
    }
}

/// Exact membership of an integer vector in Δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorClass {
    NotRoot,
    Real,
    Imaginary,
}

/// Decides whether `v` lies in Δ_re, Δ_im or neither.
///
/// Descent: while ⟨α, α_i^∨⟩ > 0 for some i, replace α by s_i α; a positive non-simple root stays
/// a positive root of smaller height, and non-roots stay non-roots. The process ends at a simple
/// root (real), at a multiple kα_i with k ≥ 2 or a vector with a negative coordinate (not a
/// root), or in the cone K of vectors with nonpositive pairings, whose elements are imaginary
/// roots exactly when their support is connected.
pub fn classify_vector(a: &KacMoodyMatrix, v: &Root) -> VectorClass {
    let mut cur = match v.sign() {
        RootSign::Positive => v.clone(),
        RootSign::Negative => v.neg(),
        _ => return VectorClass::NotRoot,
    };
    loop {
        if cur.0.iter().any(|&c| c < 0) {
            return VectorClass::NotRoot;
        }
        let supp = cur.support();
        if supp.len() == 1 {
            return if cur.0[supp[0]] == 1 { VectorClass::Real } else { VectorClass::NotRoot };
        }
        match (0..a.rank()).find(|&i| a.pairing(&cur.0, i) > 0) {
            Some(i) => cur = cur.reflect(a, i),
            None => {
                return if a.is_connected(&supp) {
                    VectorClass::Imaginary
                } else {
                    VectorClass::NotRoot
                };
            }
        }
    }
}

fn sort_roots(v: &mut [Root]) {
    v.sort_by_key(Root::order_key);
}

/// Positive real roots of height ≤ H, by breadth-first search over simple reflections.
///
/// Each positive non-simple real root has some s_i lowering its height, so the search starting
/// from the simple roots and never leaving the height band reaches all of them.
pub fn enumerate_real_roots(a: &KacMoodyMatrix, h: u32) -> Result<Vec<Root>, RootDataError> {
    let r = a.rank();
    let mut seen: BTreeSet<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
    let mut frontier: Vec<Root> = seen.iter().cloned().collect();
    sort_roots(&mut frontier);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for alpha in &frontier {
            for i in 0..r {
                let b = alpha.reflect(a, i);
                if b.is_positive() && b.height() <= i64::from(h) && seen.insert(b.clone()) {
                    next.push(b);
                }
            }
        }
        if seen.len() > ROOT_CAP {
            return Err(RootDataError::ResourceLimit(format!(
                "real-root orbit exceeds {ROOT_CAP} elements"
            )));
        }
        sort_roots(&mut next);
        frontier = next;
    }
    let mut out: Vec<Root> = seen.into_iter().filter(|b| b.height() <= i64::from(h)).collect();
    sort_roots(&mut out);
    Ok(out)
}

/// All nonnegative nonzero integer vectors of height ≤ H, in listing order.
pub fn positive_vectors(rank: usize, h: u32) -> Result<Vec<Root>, RootDataError> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fn rec(
        k: usize,
        left: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Root>,
    ) -> Result<(), RootDataError> {
        if k == cur.len() {
            if cur.iter().any(|&c| c != 0) {
                out.push(Root(cur.clone()));
                if out.len() > ROOT_CAP {
                    return Err(RootDataError::ResourceLimit(format!(
                        "more than {ROOT_CAP} weights below the height bound"
                    )));
                }
            }
            return Ok(());
        }
        for c in 0..=left {
            cur[k] = c;
            rec(k + 1, left - c, cur, out)?;
        }
        cur[k] = 0;
        Ok(())
    }
    rec(0, i64::from(h), &mut cur, &mut out)?;
    sort_roots(&mut out);
    Ok(out)
}

/// Δ⁺ up to height H with exact realness, decided by descent (no multiplicities).
pub fn enumerate_root_set(
    a: &KacMoodyMatrix,
    h: u32,
) -> Result<Vec<(Root, VectorClass)>, RootDataError> {
    Ok(positive_vectors(a.rank(), h)?
        .into_iter()
        .filter_map(|v| match classify_vector(a, &v) {
            VectorClass::NotRoot => None,
            c => Some((v, c)),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub root: Root,
    pub mult: u64,
    pub real: bool,
}

/// Δ⁺ truncated at a height bound; Δ⁻ = −Δ⁺.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTable {
    pub height_bound: u32,
    pub entries: Vec<RootEntry>,
}

impl RootTable {
    pub fn get(&self, alpha: &Root) -> Option<&RootEntry> {
        let key = if alpha.is_negative() { alpha.neg() } else { alpha.clone() };
        self.entries.iter().find(|e| e.root == key)
    }

    pub fn mult(&self, alpha: &Root) -> u64 {
        self.get(alpha).map_or(0, |e| e.mult)
    }

    pub fn real(&self) -> impl Iterator<Item = &RootEntry> {
        self.entries.iter().filter(|e| e.real)
    }

    pub fn imaginary(&self) -> impl Iterator<Item = &RootEntry> {
        self.entries.iter().filter(|e| !e.real)
    }

    pub fn roots(&self) -> Vec<Root> {
        self.entries.iter().map(|e| e.root.clone()).collect()
    }
}

/// Δ⁺ of height ≤ H with multiplicities dim g_α read from primitive elements of 𝒰⁺.
///
/// Real roots come from the Weyl orbit of the simple roots; a root is imaginary when it has
/// positive multiplicity and is not in that orbit.
pub fn enumerate_roots(s: &RootDatum, h: u32) -> Result<RootTable, RootDataError> {
    if h == 0 {
        return Err(RootDataError::PreconditionFailed("height bound must be ≥ 1".into()));
    }
    let a = s.matrix();
    let real: BTreeSet<Root> = enumerate_real_roots(a, h)?.into_iter().collect();
    let dims: BTreeMap<Vec<i64>, usize> = crate::envalg::primitive_dimensions(a, h)
        .map_err(|e| RootDataError::ResourceLimit(e.to_string()))?;
    let mut entries: Vec<RootEntry> = dims
        .into_iter()
        .filter(|(_, d)| *d > 0)
        .map(|(v, d)| {
            let root = Root(v);
            let is_real = real.contains(&root);
            RootEntry { root, mult: d as u64, real: is_real }
        })
        .collect();
    entries.sort_by_key(|e| e.root.order_key());
    Ok(RootTable { height_bound: h, entries })
}

#[cfg(test)]
mod tests {
    use super::super::standard::*;
    use super::*;

    #[test]
    fn descent_on_affine() {
        let a = a1_affine();
        assert_eq!(classify_vector(&a, &Root(vec![1, 1])), VectorClass::Imaginary);
        assert_eq!(classify_vector(&a, &Root(vec![2, 1])), VectorClass::Real);
        assert_eq!(classify_vector(&a, &Root(vec![3, 1])), VectorClass::NotRoot);
        assert_eq!(classify_vector(&a, &Root(vec![-2, -2])), VectorClass::Imaginary);
        assert_eq!(classify_vector(&a, &Root(vec![1, -1])), VectorClass::NotRoot);
    }

    #[test]
    fn hyperbolic_small_roots() {
        let a = hyperbolic(3);
        let real = enumerate_real_roots(&a, 4).unwrap();
        assert_eq!(
            real,
            vec![Root(vec![0, 1]), Root(vec![1, 0]), Root(vec![1, 3]), Root(vec![3, 1])]
        );
        for v in [[1, 1], [1, 2], [2, 1]] {
            assert_eq!(classify_vector(&a, &Root(v.to_vec())), VectorClass::Imaginary);
        }
    }

    #[test]
    fn a2_roots() {
        let set = enumerate_root_set(&a2(), 5).unwrap();
        assert_eq!(set.len(), 3);
        assert!(set.iter().all(|(_, c)| *c == VectorClass::Real));
    }
}
