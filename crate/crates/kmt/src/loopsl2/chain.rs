//! The lattice chain filtration of SL_m(R((t))) (R a ring, Iwahori-type chain).
//!
//! V_i = ⊕_j R·t^{σ_i(j)}ε_j with σ_i(j) = ⌊(i + j)/m⌋ (0-indexed j), so V_{i+m} = t·V_i, and
//! g ∈ U_n exactly when (g − 1)V_i ⊆ V_{i+n} for every i.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::num::{CoefficientRing, Q};

use super::laurent::{Laurent, LaurentMatrix};
use super::LoopError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeChain {
    pub m: usize,
}

/// The filtration level of g; `None` means g − 1 vanishes identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationLevel {
    pub level: Option<u64>,
    /// The bound is set by an entry that is zero only within the truncation window, so the
    /// true level may be larger.
    pub at_truncation: bool,
}

impl LatticeChain {
    pub fn sigma(&self, i: i64, j: usize) -> i64 {
        (i + j as i64).div_euclid(self.m as i64)
    }

    /// The largest n with t^o·V_i(col j) ⊆ V_{i+n}(row k) for all i, given ord = o.
    fn entry_bound(&self, o: i64, k: usize, j: usize) -> i64 {
        let m = self.m as i64;
        (0..m).map(|i| m * (o + self.sigma(i, j)) + m - 1 - i - k as i64).min().expect("m ≥ 1")
    }

    pub fn level(&self, g: &LaurentMatrix) -> Result<FiltrationLevel, LoopError> {
        if g.size() != self.m {
            return Err(LoopError::Shape);
        }
        let mut best: Option<(i64, bool)> = None;
        for k in 0..self.m {
            for j in 0..self.m {
                let mut x = g.entry(k, j).clone();
                if k == j {
                    x = x.sub(&Laurent::one());
                }
                let (o, trunc) = match (x.ord(), g.prec()) {
                    (Some(o), _) => (o, false),
                    (None, Some(p)) => (p + 1, true),
                    (None, None) => continue,
                };
                let b = self.entry_bound(o, k, j);
                best = match best {
                    Some((v, t)) if v < b || (v == b && t) => Some((v, t)),
                    Some((v, _)) if v == b => Some((v, trunc)),
                    _ => Some((b, trunc)),
                };
            }
        }
        Ok(match best {
            None => FiltrationLevel { level: None, at_truncation: false },
            Some((v, t)) => FiltrationLevel { level: Some(v.max(0) as u64), at_truncation: t && v > 0 },
        })
    }

    /// g ∈ U_n, failing when the answer depends on coefficients beyond the truncation window.
    pub fn contains(&self, g: &LaurentMatrix, n: u64) -> Result<bool, LoopError> {
        let lv = self.level(g)?;
        match lv.level {
            None => Ok(true),
            Some(l) if l >= n => Ok(true),
            Some(_) if lv.at_truncation => Err(LoopError::TruncationTooShallow),
            Some(_) => Ok(false),
        }
    }
}

/// u = diag(x, …, x, x^{1−m}) with x = 1 + tⁿ, a series known to degree `prec`.
pub fn gk_diagonal(m: usize, n: i64, prec: i64, ring: CoefficientRing) -> Result<LaurentMatrix, LoopError> {
    let x = Laurent::from_terms([(0, Q::one()), (n, Q::one())]);
    let mut last = Laurent::one();
    for _ in 1..m {
        last = last.mul(&x).truncate(prec);
    }
    let last = last.series_inverse(prec).ok_or(LoopError::Shape)?;
    let mut diag = vec![x; m - 1];
    diag.push(last);
    LaurentMatrix::diagonal(ring, diag, Some(prec))
}

/// y = 1 + λE_{j+1, j}, the image of exp(λf_j).
pub fn lower_elementary(m: usize, j: usize, lambda: &Q, ring: CoefficientRing) -> Result<LaurentMatrix, LoopError> {
    let mut e: Vec<Vec<Laurent>> = LaurentMatrix::identity(ring, m, None).entries().to_vec();
    e[j + 1][j] = Laurent::constant(lambda.clone());
    LaurentMatrix::new(ring, e, None)
}
