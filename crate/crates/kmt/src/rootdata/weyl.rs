use serde::{Deserialize, Serialize};

use crate::num::{q, Q};

use super::{Root, RootDatum};

/// An element of W^v given by a word; `word = [i1, …, ik]` means s_{i1} ∘ ⋯ ∘ s_{ik}.
///
/// `action_q` acts on simple-root coordinates and `action_y` on Y, both as matrices applied
/// to column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub action_q: Vec<Vec<i64>>,
    pub action_y: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
        .collect()
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Matrix of s_i on Q: column k is s_i(α_k) = α_k − a_ik α_i.
fn reflection_q(s: &RootDatum, i: usize) -> Vec<Vec<i64>> {
    let mut m = identity(s.rank());
    for k in 0..s.rank() {
        m[i][k] -= s.matrix().entry(i, k);
    }
    m
}

/// Matrix of s_i on Y: y ↦ y − ᾱ_i(y) α_i^∨.
fn reflection_y(s: &RootDatum, i: usize) -> Vec<Vec<i64>> {
    let n = s.rank_y();
    let mut m = identity(n);
    for row in 0..n {
        for col in 0..n {
            m[row][col] -= s.coroot(i)[row] * s.root_covector(i)[col];
        }
    }
    m
}

impl WeylElement {
    pub fn identity(s: &RootDatum) -> Self {
        WeylElement { word: Vec::new(), action_q: identity(s.rank()), action_y: identity(s.rank_y()) }
    }

    pub fn simple(s: &RootDatum, i: usize) -> Self {
        Self::from_word(s, &[i])
    }

    pub fn from_word(s: &RootDatum, word: &[usize]) -> Self {
        let mut w = Self::identity(s);
        for &i in word {
            w = w.then_simple(s, i);
        }
        w
    }

    /// w · s_i
    pub fn then_simple(&self, s: &RootDatum, i: usize) -> Self {
        let mut word = self.word.clone();
        word.push(i);
        WeylElement {
            word,
            action_q: mul(&self.action_q, &reflection_q(s, i)),
            action_y: mul(&self.action_y, &reflection_y(s, i)),
        }
    }

    pub fn compose(&self, other: &WeylElement) -> Self {
        let mut word = self.word.clone();
        word.extend(&other.word);
        WeylElement {
            word,
            action_q: mul(&self.action_q, &other.action_q),
            action_y: mul(&self.action_y, &other.action_y),
        }
    }

    pub fn inverse(&self, s: &RootDatum) -> Self {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        Self::from_word(s, &rev)
    }

    pub fn apply_root(&self, alpha: &Root) -> Root {
        Root(apply(&self.action_q, &alpha.0))
    }

    pub fn apply_y(&self, y: &[i64]) -> Vec<i64> {
        apply(&self.action_y, y)
    }

    pub fn apply_v(&self, v: &[Q]) -> Vec<Q> {
        self.action_y
            .iter()
            .map(|row| row.iter().zip(v).map(|(&a, x)| x * q(a)).sum())
            .collect()
    }

    /// ℓ(w), computed through ℓ(w s_i) = ℓ(w) ± 1 according to the sign of w(α_i).
    pub fn reduced_length(&self, s: &RootDatum) -> usize {
        let mut w = Self::identity(s);
        let mut len = 0usize;
        for &i in &self.word {
            if w.apply_root(&Root::simple(s.rank(), i)).is_positive() {
                len += 1;
            } else {
                len -= 1;
            }
            w = w.then_simple(s, i);
        }
        len
    }

    /// Elements with the same action on Q and Y are equal in W^v.
    pub fn same_element(&self, other: &WeylElement) -> bool {
        self.action_q == other.action_q && self.action_y == other.action_y
    }
}
