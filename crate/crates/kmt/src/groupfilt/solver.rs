//! Solving v·t·v⁻¹·t⁻¹ = u in U^{ma+} for a torus element t acting on weights by a character.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::envalg::AlgebraElement;
use crate::num::Q;
use crate::rootdata::Root;

use super::{GroupFiltError, GroupLikeElement};

/// t given by the values α_i(t) ∈ ℚ^× on the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    #[serde(with = "crate::num::serde_q::vec")]
    pub simple: Vec<Q>,
}

impl Character {
    pub fn new(simple: Vec<Q>) -> Result<Self, GroupFiltError> {
        if simple.iter().any(Zero::is_zero) {
            return Err(GroupFiltError::InvalidInput("character values must be nonzero".into()));
        }
        Ok(Character { simple })
    }

    /// ν(t) = ∏ α_i(t)^{ν_i}.
    pub fn eval(&self, nu: &Root) -> Q {
        nu.0.iter().zip(&self.simple).fold(Q::one(), |acc, (&n, c)| {
            let p = num_traits::pow(c.clone(), n.unsigned_abs() as usize);
            if n >= 0 {
                acc * p
            } else {
                acc / p
            }
        })
    }
}

/// t u t⁻¹: each PBW monomial of weight ν is scaled by ν(t).
pub fn adjoint_torus(u: &AlgebraElement, chi: &Character) -> AlgebraElement {
    let ctx = u.context().clone();
    AlgebraElement::from_terms(
        &ctx,
        u.terms().iter().map(|(m, c)| (m.clone(), c * chi.eval(&ctx.monomial_weight(m)))),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationSolution {
    pub v: GroupLikeElement,
    pub depth: u32,
    /// v·t·v⁻¹·t⁻¹ = u up to height `depth`.
    pub identity_holds: bool,
}

fn commutator_with_t(v: &GroupLikeElement, chi: &Character) -> Result<GroupLikeElement, GroupFiltError> {
    let tvt = GroupLikeElement { u: adjoint_torus(v.inverse()?.element(), chi) };
    v.mul(&tvt)
}

/// Degree by degree: with c = v·t v⁻¹ t⁻¹ the current commutator, the residual c⁻¹u is 1 plus a
/// primitive part Σ λ_x x in the lowest degree r, and v ← v·∏ [exp](λ_x/(1 − α(t))) x fixes it.
pub fn conjugation_solve(chi: &Character, u: &GroupLikeElement, depth: u32) -> Result<ConjugationSolution, GroupFiltError> {
    let ctx = u.context().clone();
    if chi.simple.len() != ctx.datum().rank() {
        return Err(GroupFiltError::InvalidInput("one character value per simple root".into()));
    }
    if depth == 0 || depth > ctx.height_bound() {
        return Err(GroupFiltError::HeightBoundTooSmall(format!(
            "depth {depth} must lie in 1..={}",
            ctx.height_bound()
        )));
    }
    let mut v = GroupLikeElement::one(&ctx);
    for r in 1..=i64::from(depth) {
        let c = commutator_with_t(&v, chi)?;
        let residual = c.inverse()?.mul(u)?;
        let mut step = GroupLikeElement::one(&ctx);
        for (k, b) in ctx.basis().iter().enumerate() {
            if b.height() != r {
                continue;
            }
            let lambda = residual.element().linear_coeff(k);
            if lambda.is_zero() {
                continue;
            }
            let denom = Q::one() - chi.eval(&b.root);
            if denom.is_zero() {
                return Err(GroupFiltError::CharacterDegenerate(b.root.0.clone()));
            }
            let coeff = ctx.ring().from_q(&(lambda / denom)).map_err(|e| GroupFiltError::InvalidInput(e.to_string()))?;
            step = step.mul(&GroupLikeElement::exp_basis(&ctx, k, &coeff))?;
        }
        v = v.mul(&step)?;
    }
    let c = commutator_with_t(&v, chi)?;
    let d = i64::from(depth);
    let identity_holds = c.element().truncate_height(d) == u.element().truncate_height(d);
    Ok(ConjugationSolution { v, depth, identity_holds })
}
