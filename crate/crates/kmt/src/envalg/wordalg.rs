//! 𝒰⁺_ℚ as the free algebra on the e_i modulo the Serre ideal, built weight by weight.
//!
//! U_ν is presented as ⊕_i e_i·U_{ν−α_i} modulo the images of s·b, for s a Serre element and b
//! a basis vector of U_{ν−wt(s)}. Every two-sided ideal element reduces to this form, so the
//! quotient is exact. Basis vectors of U_ν are standard words: e_i followed by a standard word
//! of U_{ν−α_i}.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::linalg;
use crate::num::{binom, factorial, q, qz, Q};
use crate::rootdata::{positive_vectors, KacMoodyMatrix};

use super::EnvAlgError;

/// Hard cap on the dimension of a single weight space.
pub const WEIGHT_DIM_CAP: usize = 4000;

#[derive(Debug, Clone)]
pub struct WeightSpace {
    pub weight: Vec<i64>,
    pub dim: usize,
    /// Standard word of each basis vector.
    pub words: Vec<Vec<usize>>,
    /// left[i][k] = e_i · b_k for b_k the k-th basis vector of U_{ν−α_i}.
    left: Vec<Option<Vec<Vec<Q>>>>,
}

/// A homogeneous vector: weight id and coordinates in the standard-word basis.
pub type HVec = (usize, Vec<Q>);

#[derive(Debug, Clone)]
pub struct WordAlgebra {
    a: KacMoodyMatrix,
    h: u32,
    index: HashMap<Vec<i64>, usize>,
    spaces: Vec<WeightSpace>,
    lie: Vec<Vec<Vec<Q>>>,
}

pub(crate) fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub(crate) fn axpy(acc: &mut [Q], c: &Q, v: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

fn serre_terms(a: &KacMoodyMatrix, i: usize, j: usize) -> Vec<(Q, Vec<usize>)> {
    let n = (1 - a.entry(i, j)) as u32;
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut w = vec![i; (n - k) as usize];
            w.push(j);
            w.extend(std::iter::repeat(i).take(k as usize));
            (qz(binom(n as i64, k)) * q(sign), w)
        })
        .collect()
}

impl WordAlgebra {
    pub fn new(a: &KacMoodyMatrix, h: u32) -> Result<Self, EnvAlgError> {
        let r = a.rank();
        let mut weights = vec![vec![0i64; r]];
        weights.extend(
            positive_vectors(r, h).map_err(|e| EnvAlgError::ResourceLimit(e.to_string()))?.into_iter().map(|x| x.0),
        );
        let mut alg = WordAlgebra {
            a: a.clone(),
            h,
            index: HashMap::new(),
            spaces: Vec::new(),
            lie: Vec::new(),
        };
        for w in weights {
            let id = alg.spaces.len();
            alg.index.insert(w.clone(), id);
            let space = alg.build_space(&w)?;
            alg.spaces.push(space);
            let lie = alg.build_lie(id);
            alg.lie.push(lie);
        }
        Ok(alg)
    }

    fn build_space(&self, nu: &[i64]) -> Result<WeightSpace, EnvAlgError> {
        let r = self.a.rank();
        if nu.iter().all(|&c| c == 0) {
            return Ok(WeightSpace {
                weight: nu.to_vec(),
                dim: 1,
                words: vec![Vec::new()],
                left: vec![None; r],
            });
        }
        // Block offsets of ⊕_i U_{ν−α_i}.
        let mut offsets = vec![usize::MAX; r];
        let mut ncols = 0;
        for i in 0..r {
            if nu[i] > 0 {
                let mut sub = nu.to_vec();
                sub[i] -= 1;
                offsets[i] = ncols;
                ncols += self.spaces[self.index[&sub]].dim;
            }
        }
        let mut rels: Vec<Vec<Q>> = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let nn = 1 - self.a.entry(i, j);
                let mut rest = nu.to_vec();
                rest[i] -= nn;
                rest[j] -= 1;
                if rest.iter().any(|&c| c < 0) {
                    continue;
                }
                let rid = self.index[&rest];
                let terms = serre_terms(&self.a, i, j);
                for k in 0..self.spaces[rid].dim {
                    let mut b = vec![Q::zero(); self.spaces[rid].dim];
                    b[k] = Q::one();
                    let mut row = vec![Q::zero(); ncols];
                    for (c, w) in &terms {
                        let (wid, v) = self.apply_word(&w[1..], (rid, b.clone()));
                        debug_assert_eq!(self.spaces[wid].dim, v.len());
                        let off = offsets[w[0]];
                        for (t, x) in v.iter().enumerate() {
                            if !x.is_zero() {
                                row[off + t] += c * x;
                            }
                        }
                    }
                    rels.push(row);
                }
            }
        }
        let pivots = linalg::rref(&mut rels);
        let is_pivot: Vec<bool> = {
            let mut p = vec![false; ncols];
            for &c in &pivots {
                p[c] = true;
            }
            p
        };
        let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
        if free.len() > WEIGHT_DIM_CAP {
            return Err(EnvAlgError::ResourceLimit(format!(
                "weight space {nu:?} has dimension {} > {WEIGHT_DIM_CAP}",
                free.len()
            )));
        }
        let col_to_basis: HashMap<usize, usize> =
            free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let pivot_row: HashMap<usize, usize> =
            pivots.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut words = vec![Vec::new(); free.len()];
        let mut left = vec![None; r];
        for i in 0..r {
            if offsets[i] == usize::MAX {
                continue;
            }
            let mut sub = nu.to_vec();
            sub[i] -= 1;
            let sid = self.index[&sub];
            let mut rows = Vec::with_capacity(self.spaces[sid].dim);
            for k in 0..self.spaces[sid].dim {
                let col = offsets[i] + k;
                let mut v = vec![Q::zero(); free.len()];
                if let Some(&b) = col_to_basis.get(&col) {
                    v[b] = Q::one();
                    let mut w = vec![i];
                    w.extend(&self.spaces[sid].words[k]);
                    words[b] = w;
                } else {
                    let row = &rels[pivot_row[&col]];
                    for (b, &c) in free.iter().enumerate() {
                        if !row[c].is_zero() {
                            v[b] = -row[c].clone();
                        }
                    }
                }
                rows.push(v);
            }
            left[i] = Some(rows);
        }
        Ok(WeightSpace { weight: nu.to_vec(), dim: free.len(), words, left })
    }

    /// g_ν as the span of [e_i, x] for x ∈ g_{ν−α_i}; RREF rows.
    fn build_lie(&self, id: usize) -> Vec<Vec<Q>> {
        let nu = &self.spaces[id].weight;
        let h: i64 = nu.iter().sum();
        let r = self.a.rank();
        if h == 0 {
            return Vec::new();
        }
        if h == 1 {
            return vec![vec![Q::one()]];
        }
        let mut rows = Vec::new();
        for i in 0..r {
            if nu[i] == 0 {
                continue;
            }
            let mut sub = nu.clone();
            sub[i] -= 1;
            let sid = self.index[&sub];
            let ei = self.generator(i);
            for x in &self.lie[sid] {
                let a = self.mul(&ei, &(sid, x.clone())).expect("within bound");
                let b = self.mul(&(sid, x.clone()), &ei).expect("within bound");
                rows.push(a.1.iter().zip(&b.1).map(|(p, q)| p - q).collect());
            }
        }
        linalg::rref(&mut rows);
        rows
    }

    pub fn matrix(&self) -> &KacMoodyMatrix {
        &self.a
    }

    pub fn height_bound(&self) -> u32 {
        self.h
    }

    pub fn weight_id(&self, nu: &[i64]) -> Option<usize> {
        self.index.get(nu).copied()
    }

    pub fn space(&self, id: usize) -> &WeightSpace {
        &self.spaces[id]
    }

    pub fn spaces(&self) -> &[WeightSpace] {
        &self.spaces
    }

    pub fn dim(&self, nu: &[i64]) -> usize {
        self.weight_id(nu).map_or(0, |id| self.spaces[id].dim)
    }

    /// Basis of g_ν ⊂ U_ν (RREF rows, in standard-word coordinates).
    pub fn lie_basis(&self, id: usize) -> &[Vec<Q>] {
        &self.lie[id]
    }

    pub fn one(&self) -> HVec {
        (0, vec![Q::one()])
    }

    pub fn generator(&self, i: usize) -> HVec {
        let mut w = vec![0; self.a.rank()];
        w[i] = 1;
        (self.index[&w], vec![Q::one()])
    }

    pub fn zero_at(&self, id: usize) -> HVec {
        (id, vec![Q::zero(); self.spaces[id].dim])
    }

    /// e_i · v, or `None` beyond the height bound.
    pub fn apply_letter(&self, i: usize, v: &HVec) -> Option<HVec> {
        let mut w = self.spaces[v.0].weight.clone();
        w[i] += 1;
        let id = *self.index.get(&w)?;
        let rows = self.spaces[id].left[i].as_ref().expect("letter block exists");
        let mut out = vec![Q::zero(); self.spaces[id].dim];
        for (c, row) in v.1.iter().zip(rows) {
            axpy(&mut out, c, row);
        }
        Some((id, out))
    }

    fn apply_word(&self, word: &[usize], v: HVec) -> HVec {
        word.iter().rev().fold(v, |acc, &i| self.apply_letter(i, &acc).expect("within bound"))
    }

    /// word · v, or `None` beyond the height bound.
    pub fn word_times(&self, word: &[usize], v: &HVec) -> Option<HVec> {
        let mut acc = v.clone();
        for &i in word.iter().rev() {
            acc = self.apply_letter(i, &acc)?;
        }
        Some(acc)
    }

    pub fn word_vec(&self, word: &[usize]) -> Option<HVec> {
        self.word_times(word, &self.one())
    }

    pub fn weight_sum(&self, a: usize, b: usize) -> Option<usize> {
        let w: Vec<i64> =
            self.spaces[a].weight.iter().zip(&self.spaces[b].weight).map(|(x, y)| x + y).collect();
        self.weight_id(&w)
    }

    pub fn mul(&self, x: &HVec, y: &HVec) -> Option<HVec> {
        let id = self.weight_sum(x.0, y.0)?;
        let mut out = vec![Q::zero(); self.spaces[id].dim];
        for (k, c) in x.1.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (_, v) = self.word_times(&self.spaces[x.0].words[k], y)?;
            axpy(&mut out, c, &v);
        }
        Some((id, out))
    }

    /// τ: words map to (−1)^len times the reversed word.
    pub fn antipode(&self, x: &HVec) -> HVec {
        let mut out = vec![Q::zero(); x.1.len()];
        for (k, c) in x.1.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = &self.spaces[x.0].words[k];
            let rev: Vec<usize> = w.iter().rev().copied().collect();
            let (_, v) = self.word_vec(&rev).expect("same weight");
            let sign = if w.len() % 2 == 0 { c.clone() } else { -c.clone() };
            axpy(&mut out, &sign, &v);
        }
        (x.0, out)
    }

    /// Components of ∇x − x⊗1 − 1⊗x, keyed by the weight pair; each block is a dense
    /// d₁ × d₂ matrix flattened row-major.
    pub fn reduced_coproduct(&self, x: &HVec) -> HashMap<(usize, usize), Vec<Q>> {
        let mut out: HashMap<(usize, usize), Vec<Q>> = HashMap::new();
        for (k, c) in x.1.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = &self.spaces[x.0].words[k];
            let n = w.len();
            for mask in 1u64..((1u64 << n) - 1) {
                let (mut l, mut r) = (Vec::new(), Vec::new());
                for (pos, &letter) in w.iter().enumerate() {
                    if mask & (1 << pos) != 0 {
                        l.push(letter);
                    } else {
                        r.push(letter);
                    }
                }
                let (li, lv) = self.word_vec(&l).expect("sub-weight");
                let (ri, rv) = self.word_vec(&r).expect("sub-weight");
                let d2 = rv.len();
                let block = out.entry((li, ri)).or_insert_with(|| vec![Q::zero(); lv.len() * d2]);
                for (a, xa) in lv.iter().enumerate() {
                    if xa.is_zero() {
                        continue;
                    }
                    for (b, xb) in rv.iter().enumerate() {
                        if !xb.is_zero() {
                            block[a * d2 + b] += c * xa * xb;
                        }
                    }
                }
            }
        }
        out
    }

    /// Basis of primitive elements of U_ν: the kernel of the reduced coproduct (RREF rows).
    pub fn primitive_basis(&self, id: usize) -> Vec<Vec<Q>> {
        let d = self.spaces[id].dim;
        let images: Vec<HashMap<(usize, usize), Vec<Q>>> = (0..d)
            .map(|k| {
                let mut e = vec![Q::zero(); d];
                e[k] = Q::one();
                self.reduced_coproduct(&(id, e))
            })
            .collect();
        let mut keys: Vec<(usize, usize)> = images.iter().flat_map(|m| m.keys().copied()).collect();
        keys.sort_unstable();
        keys.dedup();
        let lens: Vec<usize> = keys
            .iter()
            .map(|key| self.spaces[key.0].dim * self.spaces[key.1].dim)
            .collect();
        let total: usize = lens.iter().sum();
        // Columns of the d × total matrix; the left kernel is the primitive space.
        let rows: Vec<Vec<Q>> = images
            .iter()
            .map(|m| {
                let mut row = Vec::with_capacity(total);
                for (key, &len) in keys.iter().zip(&lens) {
                    match m.get(key) {
                        Some(b) => row.extend(b.iter().cloned()),
                        None => row.extend(std::iter::repeat(Q::zero()).take(len)),
                    }
                }
                row
            })
            .collect();
        let transposed: Vec<Vec<Q>> =
            (0..total).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
        let mut ker = linalg::right_nullspace(&transposed, d);
        linalg::rref(&mut ker);
        ker
    }

    /// Spanning set of the divided-power ℤ-form in weight ν: all e_{i1}^{(n1)} ⋯ e_{ik}^{(nk)}
    /// with consecutive letters distinct.
    pub fn divided_power_products(&self, id: usize) -> Vec<Vec<Q>> {
        let nu = self.spaces[id].weight.clone();
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.runs(&nu, None, &mut word, Q::one(), &mut out);
        out
    }

    fn runs(
        &self,
        left: &[i64],
        last: Option<usize>,
        word: &mut Vec<usize>,
        scale: Q,
        out: &mut Vec<Vec<Q>>,
    ) {
        if left.iter().all(|&c| c == 0) {
            let (_, v) = self.word_vec(word).expect("within bound");
            out.push(v.into_iter().map(|x| x * &scale).collect());
            return;
        }
        for i in 0..left.len() {
            if Some(i) == last || left[i] == 0 {
                continue;
            }
            for n in 1..=left[i] {
                let mut rest = left.to_vec();
                rest[i] -= n;
                let len = word.len();
                word.extend(std::iter::repeat(i).take(n as usize));
                let s = &scale / qz(factorial(n as u32));
                self.runs(&rest, Some(i), word, s, out);
                word.truncate(len);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::standard;

    #[test]
    fn dimensions_sl3() {
        let w = WordAlgebra::new(&standard::a2(), 4).unwrap();
        assert_eq!(w.dim(&[1, 1]), 2);
        assert_eq!(w.dim(&[2, 1]), 2);
        assert_eq!(w.dim(&[2, 2]), 3);
        assert_eq!(w.lie_basis(w.weight_id(&[1, 1]).unwrap()).len(), 1);
        assert_eq!(w.lie_basis(w.weight_id(&[2, 1]).unwrap()).len(), 0);
    }

    #[test]
    fn serre_relation_vanishes() {
        let w = WordAlgebra::new(&standard::a2(), 3).unwrap();
        let id = w.weight_id(&[2, 1]).unwrap();
        let mut acc = vec![Q::zero(); w.space(id).dim];
        for (c, word) in serre_terms(w.matrix(), 0, 1) {
            axpy(&mut acc, &c, &w.word_vec(&word).unwrap().1);
        }
        assert!(is_zero_vec(&acc));
    }

    #[test]
    fn primitives_match_brackets_affine() {
        let w = WordAlgebra::new(&standard::a1_affine(), 5).unwrap();
        for id in 1..w.spaces().len() {
            let mut p = w.primitive_basis(id);
            let mut l = w.lie_basis(id).to_vec();
            linalg::rref(&mut p);
            linalg::rref(&mut l);
            assert_eq!(p, l, "weight {:?}", w.space(id).weight);
        }
    }
}
