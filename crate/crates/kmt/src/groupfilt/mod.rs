//! Pro-unipotent groups U^{ma}_Ψ as truncated group-like elements of 𝒰⁺: unique product
//! factorization, subgroup decompositions, valuation-level membership, and the density,
//! conjugation and degree-bound algorithms.
//!
//! Every element lives in a context truncated at height H; "equal" always means equal at
//! truncation.

mod audit;
mod density;
mod solver;

pub use audit::{degree_bound_audit, DegreeAudit};
pub use density::{density_counterexample, DensityReport};
pub use solver::{adjoint_torus, conjugation_solve, Character, ConjugationSolution};

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::apartment::{f_omega, Apartment, ApartmentError, ExtendedValue, Filter};
use crate::envalg::{is_group_like, twisted_exp_basis, AlgebraContext, AlgebraElement, EnvAlgError, ExpStrategy};
use crate::num::{fmt_q, ValuedFieldModel, Q};
use crate::rootdata::{closed_set_predicates, Root, RootDataError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupFiltError {
    #[error("element is not group-like at truncation")]
    NotGroupLike,
    #[error("support escapes Ψ at root {0:?}")]
    SupportEscapesPsi(Vec<i64>),
    #[error("root set is not closed: {0}")]
    NotClosed(String),
    #[error("Ψ′ is not an ideal of Ψ: {0}")]
    NotIdeal(String),
    #[error("the character is 1 on the root {0:?}")]
    CharacterDegenerate(Vec<i64>),
    #[error("height bound too small: {0}")]
    HeightBoundTooSmall(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    EnvAlg(#[from] EnvAlgError),
    #[error(transparent)]
    Apartment(#[from] ApartmentError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// An element of 𝒰̂⁺ with counit 1 and ∇u = u ⊗ u at truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLikeElement {
    u: AlgebraElement,
}

impl GroupLikeElement {
    /// Certifies a candidate.
    pub fn new(u: AlgebraElement) -> Result<Self, GroupFiltError> {
        if is_group_like(&u) {
            Ok(GroupLikeElement { u })
        } else {
            Err(GroupFiltError::NotGroupLike)
        }
    }

    pub fn one(ctx: &Arc<AlgebraContext>) -> Self {
        GroupLikeElement { u: AlgebraElement::one(ctx) }
    }

    /// [exp]λx for the basis vector x_k.
    pub fn exp_basis(ctx: &Arc<AlgebraContext>, k: usize, lambda: &Q) -> Self {
        GroupLikeElement { u: twisted_exp_basis(ctx, k, lambda) }
    }

    pub fn element(&self) -> &AlgebraElement {
        &self.u
    }

    pub fn into_element(self) -> AlgebraElement {
        self.u
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        self.u.context()
    }

    pub fn is_one(&self) -> bool {
        self.u == AlgebraElement::one(self.context())
    }

    /// The product, truncated at the height bound (group-like elements are closed under it).
    pub fn mul(&self, other: &Self) -> Result<Self, GroupFiltError> {
        Ok(GroupLikeElement { u: strip(self.u.mul(&other.u)?) })
    }

    /// The inverse τ(u), through the antipode.
    pub fn inverse(&self) -> Result<Self, GroupFiltError> {
        Ok(GroupLikeElement { u: strip(self.u.antipode()?) })
    }

    /// Re-runs the group-like test.
    pub fn certify(&self) -> bool {
        is_group_like(&self.u)
    }
}

/// Drops the truncation flag: products of group-like elements are exact below the bound.
fn strip(u: AlgebraElement) -> AlgebraElement {
    let ctx = u.context().clone();
    AlgebraElement::from_terms(&ctx, u.terms().iter().map(|(m, c)| (m.clone(), c.clone())))
}

/// One factor [exp]λ_x x.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub root: Vec<i64>,
    pub basis_index: usize,
    #[serde(with = "crate::num::serde_q")]
    pub lambda: Q,
}

/// ∏ [exp]λ_x x over an ordered list of basis vectors (zero factors omitted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredForm {
    pub factors: Vec<Factor>,
    /// The height bound and exponential-sequence strategy of the context; imaginary-root
    /// coefficients depend on the sequence choice.
    pub fingerprint: String,
}

fn fingerprint(ctx: &AlgebraContext) -> String {
    let strategy = match ctx.strategy() {
        ExpStrategy::Solver => "solver",
        ExpStrategy::MitzmanAffine => "mitzman",
    };
    format!("H={};seq={};ring={}", ctx.height_bound(), strategy, ctx.ring())
}

impl FactoredForm {
    /// λ_x in context order.
    pub fn from_coefficients(ctx: &Arc<AlgebraContext>, lambdas: &[Q]) -> Self {
        let factors = lambdas
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_zero())
            .map(|(k, l)| Factor { root: ctx.basis()[k].root.0.clone(), basis_index: k, lambda: l.clone() })
            .collect();
        FactoredForm { factors, fingerprint: fingerprint(ctx) }
    }

    pub fn evaluate(&self, ctx: &Arc<AlgebraContext>) -> Result<GroupLikeElement, GroupFiltError> {
        if self.fingerprint != fingerprint(ctx) {
            return Err(GroupFiltError::InvalidInput("factored form from another context".into()));
        }
        let mut acc = GroupLikeElement::one(ctx);
        for f in &self.factors {
            if f.basis_index >= ctx.basis().len() {
                return Err(GroupFiltError::InvalidInput(format!("basis index {}", f.basis_index)));
            }
            acc = acc.mul(&GroupLikeElement::exp_basis(ctx, f.basis_index, &f.lambda))?;
        }
        Ok(acc)
    }

    /// λ_x by basis index (zero when absent).
    pub fn coefficient(&self, k: usize) -> Q {
        self.factors.iter().find(|f| f.basis_index == k).map_or_else(Q::zero, |f| f.lambda.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.factors
                .iter()
                .map(|f| serde_json::json!({"root": f.root, "basis_index": f.basis_index, "lambda": fmt_q(&f.lambda)}))
                .collect(),
        )
    }
}

/// Factorization u = ∏_{k ∈ order} [exp]λ_k x_k for an arbitrary ordering of ℬ.
///
/// Degree induction: with P the product of the factors already found (heights < d), the
/// factors of height d contribute Σ λ_k x_k to u − P modulo height > d.
pub fn factorize_in_order(u: &GroupLikeElement, order: &[usize]) -> Result<FactoredForm, GroupFiltError> {
    let ctx = u.context().clone();
    let n = ctx.basis().len();
    if order.len() != n || order.iter().collect::<BTreeSet<_>>().len() != n || order.iter().any(|&k| k >= n) {
        return Err(GroupFiltError::InvalidInput("order must be a permutation of the basis".into()));
    }
    if !u.element().counit().is_one() {
        return Err(GroupFiltError::NotGroupLike);
    }
    let mut lambda = vec![Q::zero(); n];
    let h = i64::from(ctx.height_bound());
    for d in 1..=h {
        let layer: Vec<usize> = order.iter().copied().filter(|&k| ctx.basis()[k].height() == d).collect();
        if layer.is_empty() {
            continue;
        }
        let p = ordered_product(&ctx, order, &lambda, d - 1)?;
        let diff = u.element().truncate_height(d).sub(&p.element().truncate_height(d))?;
        for k in layer {
            lambda[k] = diff.linear_coeff(k);
        }
    }
    let factors = order
        .iter()
        .filter(|&&k| !lambda[k].is_zero())
        .map(|&k| Factor { root: ctx.basis()[k].root.0.clone(), basis_index: k, lambda: lambda[k].clone() })
        .collect();
    let form = FactoredForm { factors, fingerprint: fingerprint(&ctx) };
    if form.evaluate(&ctx)? != *u {
        return Err(GroupFiltError::NotGroupLike);
    }
    Ok(form)
}

fn ordered_product(
    ctx: &Arc<AlgebraContext>,
    order: &[usize],
    lambda: &[Q],
    max_height: i64,
) -> Result<GroupLikeElement, GroupFiltError> {
    let mut acc = GroupLikeElement::one(ctx);
    for &k in order {
        if ctx.basis()[k].height() <= max_height && !lambda[k].is_zero() {
            acc = acc.mul(&GroupLikeElement::exp_basis(ctx, k, &lambda[k]))?;
        }
    }
    Ok(acc)
}

/// Factorization in context order; when Ψ is given every factor must lie in it.
pub fn factorize(u: &GroupLikeElement, psi: Option<&[Root]>) -> Result<FactoredForm, GroupFiltError> {
    let n = u.context().basis().len();
    let form = factorize_in_order(u, &(0..n).collect::<Vec<_>>())?;
    if let Some(psi) = psi {
        if let Some(f) = form.factors.iter().find(|f| !psi.contains(&Root(f.root.clone()))) {
            return Err(GroupFiltError::SupportEscapesPsi(f.root.clone()));
        }
    }
    Ok(form)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    Plain,
    Ideal,
}

/// u = u₁·u₂ (or u₂·u₁ when `prime_first` is false) with u₁ ∈ U^{ma}_{Ψ′}, u₂ ∈ U^{ma}_{Ψ∖Ψ′}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub u1: GroupLikeElement,
    pub u2: GroupLikeElement,
    pub prime_first: bool,
}

fn check_closed(ctx: &AlgebraContext, psi: &[Root], psi_prime: &[Root], req: Requirement) -> Result<(), GroupFiltError> {
    let s = ctx.datum();
    let h = ctx.height_bound();
    let rest: Vec<Root> = psi.iter().filter(|r| !psi_prime.contains(r)).cloned().collect();
    let rep = closed_set_predicates(s, psi, psi_prime, h)?;
    if !rep.psi_closed {
        return Err(GroupFiltError::NotClosed(format!("Ψ: {:?}", rep.psi_violation)));
    }
    if !rep.psi_prime_closed {
        return Err(GroupFiltError::NotClosed(format!("Ψ′: {:?}", rep.psi_prime_violation)));
    }
    // For an ideal the complement factor is an ordered product set and need not be a group.
    let rest_rep = closed_set_predicates(s, psi, &rest, h)?;
    if req == Requirement::Plain && !rest_rep.psi_prime_closed {
        return Err(GroupFiltError::NotClosed(format!("Ψ∖Ψ′: {:?}", rest_rep.psi_prime_violation)));
    }
    if req == Requirement::Ideal && !rep.is_ideal {
        return Err(GroupFiltError::NotIdeal(format!("{:?}", rep.ideal_violation)));
    }
    Ok(())
}

/// Splits u ∈ U^{ma}_Ψ along a closed Ψ′ ⊂ Ψ; the complement must be closed unless Ψ′ is an ideal.
pub fn decompose(
    u: &GroupLikeElement,
    psi: &[Root],
    psi_prime: &[Root],
    req: Requirement,
    prime_first: bool,
) -> Result<Decomposition, GroupFiltError> {
    let ctx = u.context().clone();
    check_closed(&ctx, psi, psi_prime, req)?;
    factorize(u, Some(psi))?;
    let n = ctx.basis().len();
    let in_prime = |k: &usize| psi_prime.contains(&ctx.basis()[*k].root);
    let (mut order, rest): (Vec<usize>, Vec<usize>) = (0..n).partition(in_prime);
    if prime_first {
        order.extend(rest);
    } else {
        order = rest.into_iter().chain(order).collect();
    }
    let form = factorize_in_order(u, &order)?;
    let mut u1 = GroupLikeElement::one(&ctx);
    let mut u2 = GroupLikeElement::one(&ctx);
    for f in &form.factors {
        let e = GroupLikeElement::exp_basis(&ctx, f.basis_index, &f.lambda);
        if in_prime(&f.basis_index) {
            u1 = u1.mul(&e)?;
        } else {
            u2 = u2.mul(&e)?;
        }
    }
    Ok(Decomposition { u1, u2, prime_first })
}

/// Whether g u g⁻¹ stays in U^{ma}_{Ψ′} for all sampled g (Ψ′ normal in Ψ).
pub fn conjugation_stable(
    u: &GroupLikeElement,
    samples: &[GroupLikeElement],
    psi_prime: &[Root],
) -> Result<bool, GroupFiltError> {
    for g in samples {
        let c = g.mul(u)?.mul(&g.inverse()?)?;
        match factorize(&c, Some(psi_prime)) {
            Ok(_) => {}
            Err(GroupFiltError::SupportEscapesPsi(_)) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Per-factor check ω(λ_x) ≥ f_Ω(α) (or > for α⁺ values).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCheck {
    pub factor: Factor,
    pub valuation: Option<i64>,
    pub bound: ExtendedValue,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaMembership {
    pub member: bool,
    pub factors: Vec<FactorCheck>,
    /// The first failing factor.
    pub witness: Option<Factor>,
}

fn valuation_admits(bound: &ExtendedValue, v: Option<i64>) -> bool {
    let Some(v) = v else { return true };
    let v = Q::from_integer(v.into());
    match bound {
        ExtendedValue::Value(k) => v >= *k,
        ExtendedValue::ValuePlus(k) => v > *k,
        ExtendedValue::Infinity => false,
    }
}

/// u ∈ U^{ma}_Ω(Ψ): every factor λ_x lies in K_{f_Ω(α)}.
pub fn omega_membership(
    u: &GroupLikeElement,
    ap: &Apartment,
    omega: &Filter,
    model: &ValuedFieldModel,
    psi: Option<&[Root]>,
) -> Result<OmegaMembership, GroupFiltError> {
    if ap.datum().matrix() != u.context().datum().matrix() {
        return Err(GroupFiltError::InvalidInput("apartment and context have different matrices".into()));
    }
    let form = factorize(u, psi)?;
    let mut factors = Vec::new();
    let mut witness = None;
    for f in form.factors {
        let bound = f_omega(ap, omega, &Root(f.root.clone()))?;
        let valuation = model.valuation(&f.lambda);
        let ok = valuation_admits(&bound, valuation);
        if !ok && witness.is_none() {
            witness = Some(f.clone());
        }
        factors.push(FactorCheck { factor: f, valuation, bound, ok });
    }
    Ok(OmegaMembership { member: witness.is_none(), factors, witness })
}
