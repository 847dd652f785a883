//! Elements of a truncated integral enveloping algebra in PBW coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::num::{fmt_q, CoefficientRing, Q};
use crate::rootdata::Root;

use super::context::{AlgebraContext, Monomial};
use super::wordalg::{axpy, HVec};
use super::EnvAlgError;

/// A finite sum Σ c_N [N] with coefficients normalized in the context's ring.
#[derive(Clone)]
pub struct AlgebraElement {
    ctx: Arc<AlgebraContext>,
    terms: BTreeMap<Monomial, Q>,
    truncated: bool,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraElement")
            .field("terms", &self.terms)
            .field("truncated", &self.truncated)
            .finish()
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

/// A sparse element of 𝒰 ⊗ 𝒰 indexed by monomial pairs.
pub type TensorElement = BTreeMap<(Monomial, Monomial), Q>;

/// The JSON shape of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: BTreeMap<usize, u32>,
    pub coeff: String,
}

impl AlgebraElement {
    pub fn zero(ctx: &Arc<AlgebraContext>) -> Self {
        AlgebraElement { ctx: ctx.clone(), terms: BTreeMap::new(), truncated: false }
    }

    pub fn one(ctx: &Arc<AlgebraContext>) -> Self {
        Self::monomial(ctx, vec![0; ctx.basis().len()], Q::one())
    }

    pub fn monomial(ctx: &Arc<AlgebraContext>, m: Monomial, c: Q) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(m, c);
        out
    }

    /// The basis vector x_k ∈ ℬ as an element.
    pub fn basis_vector(ctx: &Arc<AlgebraContext>, k: usize) -> Self {
        Self::monomial(ctx, ctx.unit_monomial(k), Q::one())
    }

    /// x_k^{[n]}, i.e. the monomial n·e_k.
    pub fn basis_power(ctx: &Arc<AlgebraContext>, k: usize, n: u32) -> Self {
        let mut m = vec![0; ctx.basis().len()];
        m[k] = n;
        if ctx.locate(&m).is_none() {
            let mut z = Self::zero(ctx);
            z.truncated = true;
            return z;
        }
        Self::monomial(ctx, m, Q::one())
    }

    pub fn from_terms(ctx: &Arc<AlgebraContext>, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut out = Self::zero(ctx);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// From a homogeneous vector in standard-word coordinates (coefficients in ℚ).
    pub(crate) fn from_word_vector(ctx: &Arc<AlgebraContext>, v: &HVec) -> Self {
        let coords = ctx.word_to_pbw(v);
        let monos = ctx.monomials_of_weight(v.0);
        Self::from_terms(ctx, monos.iter().cloned().zip(coords))
    }

    /// Word-model image of the ℚ-lift, one vector per weight.
    pub(crate) fn to_word_vectors(&self) -> BTreeMap<usize, Vec<Q>> {
        let mut out: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (id, pos) = self.ctx.locate(m).expect("monomial within bound");
            let row = &self.ctx.pbw[id].to_word[pos];
            let acc = out.entry(id).or_insert_with(|| vec![Q::zero(); row.len()]);
            axpy(acc, c, row);
        }
        out
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn ring(&self) -> &CoefficientRing {
        self.ctx.ring()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn mark_truncated(mut self, t: bool) -> Self {
        self.truncated |= t;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of the basis vector x_k itself.
    pub fn linear_coeff(&self, k: usize) -> Q {
        self.coeff(&self.ctx.unit_monomial(k))
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        let ring = self.ctx.ring().clone();
        let entry = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *entry = ring.norm(&*entry + c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check(&self, other: &Self) -> Result<(), EnvAlgError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(EnvAlgError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, EnvAlgError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out.truncated |= other.truncated;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, EnvAlgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(&self.ctx);
        out.truncated = self.truncated;
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Weight of each term, grouped.
    pub fn weights(&self) -> Vec<Root> {
        let mut w: Vec<Root> = self.terms.keys().map(|m| self.ctx.monomial_weight(m)).collect();
        w.sort_by_key(Root::order_key);
        w.dedup();
        w
    }

    /// The component of weight α.
    pub fn component(&self, alpha: &Root) -> Self {
        Self::from_terms(
            &self.ctx,
            self.terms
                .iter()
                .filter(|(m, _)| self.ctx.monomial_weight(m) == *alpha)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// The components of height ≤ d.
    pub fn truncate_height(&self, d: i64) -> Self {
        Self::from_terms(
            &self.ctx,
            self.terms
                .iter()
                .filter(|(m, _)| self.ctx.monomial_weight(m).height().abs() <= d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// PBW-straightened product; terms beyond the height bound are dropped and flagged.
    pub fn mul(&self, other: &Self) -> Result<Self, EnvAlgError> {
        self.check(other)?;
        let alg = self.ctx.word_algebra();
        let a = self.to_word_vectors();
        let b = other.to_word_vectors();
        let mut acc: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
        let mut truncated = self.truncated || other.truncated;
        for (ia, va) in &a {
            for (ib, vb) in &b {
                match alg.mul(&(*ia, va.clone()), &(*ib, vb.clone())) {
                    Some((id, v)) => {
                        let slot = acc.entry(id).or_insert_with(|| vec![Q::zero(); v.len()]);
                        axpy(slot, &Q::one(), &v);
                    }
                    None => truncated = true,
                }
            }
        }
        let mut out = Self::zero(&self.ctx);
        for (id, v) in acc {
            let coords = self.ctx.word_to_pbw(&(id, v));
            for (m, c) in self.ctx.monomials_of_weight(id).iter().zip(coords) {
                if !c.is_zero() {
                    let c = self.ctx.ring().from_q(&c).map_err(|_| {
                        EnvAlgError::NonIntegralStructure(format!(
                            "product coefficient {} outside {}",
                            fmt_q(&c),
                            self.ctx.ring()
                        ))
                    })?;
                    out.add_term(m.clone(), c);
                }
            }
        }
        out.truncated = truncated;
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self, EnvAlgError> {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// ∇[N] = Σ_{P+Q=N} [P] ⊗ [Q].
    pub fn coproduct(&self) -> TensorElement {
        let ring = self.ctx.ring();
        let mut out: TensorElement = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut splits: Vec<Monomial> = vec![Vec::new()];
            for &n in m {
                splits = splits
                    .into_iter()
                    .flat_map(|p| (0..=n).map(move |k| {
                        let mut p2 = p.clone();
                        p2.push(k);
                        p2
                    }))
                    .collect();
            }
            for p in splits {
                let qm: Monomial = m.iter().zip(&p).map(|(a, b)| a - b).collect();
                let e = out.entry((p, qm)).or_insert_with(Q::zero);
                *e = ring.norm(&*e + c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// u ⊗ v as a tensor element.
    pub fn tensor(&self, other: &Self) -> TensorElement {
        let ring = self.ctx.ring();
        let mut out: TensorElement = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = out.entry((m1.clone(), m2.clone())).or_insert_with(Q::zero);
                *e = ring.norm(&*e + c1 * c2);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn counit(&self) -> Q {
        self.coeff(&vec![0; self.ctx.basis().len()])
    }

    /// The antipode τ, an algebra anti-automorphism.
    pub fn antipode(&self) -> Result<Self, EnvAlgError> {
        let alg = self.ctx.word_algebra();
        let mut out = Self::zero(&self.ctx);
        for (id, v) in self.to_word_vectors() {
            let t = alg.antipode(&(id, v));
            let coords = self.ctx.word_to_pbw(&t);
            for (m, c) in self.ctx.monomials_of_weight(id).iter().zip(coords) {
                out.add_term(
                    m.clone(),
                    self.ctx.ring().from_q(&c).map_err(|e| EnvAlgError::NonIntegralStructure(e.to_string()))?,
                );
            }
        }
        out.truncated = self.truncated;
        Ok(out)
    }

    /// Reduction into another context with the same ℤ-structure (e.g. from ℤ to 𝔽_p).
    pub fn reduce_into(&self, ctx: &Arc<AlgebraContext>) -> Result<Self, EnvAlgError> {
        if ctx.basis().len() != self.ctx.basis().len() {
            return Err(EnvAlgError::ContextMismatch);
        }
        let mut out = Self::zero(ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), ctx.ring().from_q(c).map_err(|e| EnvAlgError::NonIntegralStructure(e.to_string()))?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                monomial: m.iter().enumerate().filter(|(_, &n)| n > 0).map(|(k, &n)| (k, n)).collect(),
                coeff: fmt_q(c),
            })
            .collect()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(k, &n)| if n == 1 { format!("x{k}") } else { format!("x{k}^[{n}]") })
                    .collect();
                let mono = if mono.is_empty() { "1".to_string() } else { mono.join("·") };
                if c.is_one() {
                    mono
                } else {
                    format!("{}·{mono}", fmt_q(c))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Tensor equality helper: a ⊗̂ b truncated at the height bound.
pub fn tensor_within(ctx: &AlgebraContext, t: &TensorElement) -> TensorElement {
    t.iter()
        .filter(|((a, b), _)| {
            let h = ctx.monomial_weight(a).height().abs() + ctx.monomial_weight(b).height().abs();
            h <= i64::from(ctx.height_bound())
        })
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect()
}
