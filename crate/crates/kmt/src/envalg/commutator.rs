//! Chevalley commutator constants C_{p,q}^{α,β} for prenilpotent pairs of real roots.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::num::{fmt_q, q, Q};
use crate::rootdata::{classify_pair, IntervalEntry, PairClass, Root};

use super::context::AlgebraContext;
use super::element::AlgebraElement;
use super::{twisted_exp_basis, EnvAlgError};

/// One factor exp(C·r^p·r′^q·e_γ) of the commutator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorEntry {
    pub p: i64,
    pub q: i64,
    pub gamma: Vec<i64>,
    #[serde(rename = "C")]
    pub c: i64,
}

/// Weyl search depth for prenilpotence witnesses.
const PAIR_DEPTH: usize = 12;

fn real_basis_index(ctx: &AlgebraContext, alpha: &Root) -> Result<usize, EnvAlgError> {
    match ctx.basis_of(alpha) {
        [k] if ctx.basis()[*k].real => Ok(*k),
        _ => Err(EnvAlgError::InvalidInput(format!("{:?} is not a real root within the height bound", alpha.0))),
    }
}

/// x_α(r) x_β(r′) x_α(−r) x_β(−r′).
fn group_commutator(
    ctx: &Arc<AlgebraContext>,
    a: usize,
    b: usize,
    r: &Q,
    rp: &Q,
) -> Result<AlgebraElement, EnvAlgError> {
    let xa = twisted_exp_basis(ctx, a, r);
    let xb = twisted_exp_basis(ctx, b, rp);
    let xa_inv = twisted_exp_basis(ctx, a, &-r);
    let xb_inv = twisted_exp_basis(ctx, b, &-rp);
    xa.mul(&xb)?.mul(&xa_inv)?.mul(&xb_inv)
}

/// ∏ x_γ(c_γ) in interval order.
fn ordered_product(
    ctx: &Arc<AlgebraContext>,
    factors: &[(usize, Q)],
) -> Result<AlgebraElement, EnvAlgError> {
    let mut acc = AlgebraElement::one(ctx);
    for (k, c) in factors {
        acc = acc.mul(&twisted_exp_basis(ctx, *k, c))?;
    }
    Ok(acc)
}

/// Factors (x_α(r), x_β(r′)) = ∏_{γ ∈ ]α,β[} x_γ(C_{p,q}^{α,β} r^p r′^q) over γ = pα + qβ in
/// increasing p/q order, on the positive side of a context; the commutator is ghg⁻¹h⁻¹.
///
/// The constants come from r = r′ = 1, solved height by height (the weight-γ part of the
/// ordered product is c_γ·e_γ plus terms in lower factors). The full identity is then checked at
/// (r, r′) = (2, 3) and (−1, 2).
pub fn commutator_constants(
    ctx: &Arc<AlgebraContext>,
    alpha: &Root,
    beta: &Root,
) -> Result<Vec<CommutatorEntry>, EnvAlgError> {
    let a = real_basis_index(ctx, alpha)?;
    let b = real_basis_index(ctx, beta)?;
    let interval: Vec<IntervalEntry> = match classify_pair(ctx.datum(), alpha, beta, PAIR_DEPTH)
        .map_err(|e| EnvAlgError::InvalidInput(e.to_string()))?
    {
        PairClass::Prenilpotent { interval, .. } => interval,
        PairClass::NotPrenilpotent { reason } => return Err(EnvAlgError::NotPrenilpotent(reason)),
        PairClass::Unknown => {
            return Err(EnvAlgError::NotPrenilpotent("no witness within the search depth".into()))
        }
    };
    let inner: Vec<IntervalEntry> = interval.into_iter().filter(|e| e.p >= 1 && e.q >= 1).collect();
    let h = i64::from(ctx.height_bound());
    if let Some(e) = inner.iter().find(|e| e.root.height() > h) {
        return Err(EnvAlgError::InvalidInput(format!("interval root {:?} exceeds the height bound", e.root.0)));
    }
    let idx: Vec<usize> = inner.iter().map(|e| real_basis_index(ctx, &e.root)).collect::<Result<_, _>>()?;
    let max_h = inner.iter().map(|e| e.root.height()).max().unwrap_or(0);

    let target = group_commutator(ctx, a, b, &Q::one(), &Q::one())?.truncate_height(max_h);
    let mut consts: Vec<Q> = vec![Q::zero(); inner.len()];
    let mut heights: Vec<i64> = inner.iter().map(|e| e.root.height()).collect();
    heights.sort_unstable();
    heights.dedup();
    for ht in heights {
        let current: Vec<(usize, Q)> = idx.iter().copied().zip(consts.iter().cloned()).collect();
        let prod = ordered_product(ctx, &current)?;
        for (pos, e) in inner.iter().enumerate() {
            if e.root.height() != ht {
                continue;
            }
            let d = target.component(&e.root).sub(&prod.component(&e.root))?;
            let unit = ctx.unit_monomial(idx[pos]);
            if d.terms().keys().any(|m| *m != unit) {
                return Err(EnvAlgError::NonIntegralConstant(format!(
                    "weight {:?} component is not a multiple of e_γ",
                    e.root.0
                )));
            }
            consts[pos] = d.coeff(&unit);
        }
    }

    for (r, rp) in [(q(1), q(1)), (q(2), q(3)), (q(-1), q(2))] {
        let lhs = group_commutator(ctx, a, b, &r, &rp)?;
        let factors: Vec<(usize, Q)> = inner
            .iter()
            .zip(&idx)
            .zip(&consts)
            .map(|((e, &k), c)| {
                let s = c * num_traits::pow(r.clone(), e.p as usize) * num_traits::pow(rp.clone(), e.q as usize);
                (k, s)
            })
            .collect();
        let rhs = ordered_product(ctx, &factors)?;
        if lhs != rhs {
            return Err(EnvAlgError::NonIntegralConstant(format!(
                "factorization fails at (r, r′) = ({}, {})",
                fmt_q(&r),
                fmt_q(&rp)
            )));
        }
    }

    inner
        .iter()
        .zip(consts)
        .map(|(e, c)| {
            if !c.is_integer() {
                return Err(EnvAlgError::NonIntegralConstant(fmt_q(&c)));
            }
            let ci = crate::num::to_i64(&c.to_integer()).ok_or_else(|| EnvAlgError::NonIntegralConstant(fmt_q(&c)))?;
            Ok(CommutatorEntry { p: e.p, q: e.q, gamma: e.root.0.clone(), c: ci })
        })
        .collect()
}
