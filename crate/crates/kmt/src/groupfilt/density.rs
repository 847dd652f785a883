//! A subgroup of U^{ma+}/U^{ma}_Ψ over 𝔽₂ generated by exp(e) and exp(f) that is not the whole
//! quotient, for the hyperbolic matrix (2, −m; −m, 2), m ≥ 3.
//!
//! Ψ = {qα + rβ : r ≥ 2 or q + r ≥ 4} is an ideal of Δ⁺ whose weight region is upward closed, so
//! the span of the weights in it is a two-sided ideal J of 𝒰⁺ and the quotient group embeds in
//! (𝒰⁺/J)^× with 𝒰⁺/J supported on the finitely many weights outside the region.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::envalg::{build_context, twisted_exp_basis, AlgebraContext, AlgebraElement, Side};
use crate::linalg;
use crate::num::{CoefficientRing, Q};
use crate::rootdata::{simply_connected_datum, standard, Root};

use super::GroupFiltError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub m: i64,
    pub height_bound: u32,
    /// dim 𝒰⁺/J over 𝔽₂.
    pub complement_dim: usize,
    /// The ten products 1, e, e^(2), e^(3), f, ef, e^(2)f, e*f, e(e*f), e^(2)*f form a basis of it.
    pub listed_basis_ok: bool,
    pub quotient_order: usize,
    pub word_group_order: usize,
    /// (ab)² in PBW coordinates.
    pub ab_squared: String,
    /// (ab)² = (ba)² = 1 + e*f + e^(2)*f.
    pub square_identity: bool,
    /// (ab)⁴ = (ba)⁴ = 1.
    pub fourth_power_is_one: bool,
    /// [exp](e^(2)*f) is not a word in a and b.
    pub missing_exp_e2f: bool,
}

fn in_region(w: &Root) -> bool {
    let (q, r) = (w.0[0], w.0[1]);
    r >= 2 || q + r >= 4
}

fn project(u: &AlgebraElement) -> AlgebraElement {
    let ctx = u.context().clone();
    AlgebraElement::from_terms(
        &ctx,
        u.terms()
            .iter()
            .filter(|(m, _)| !in_region(&ctx.monomial_weight(m)))
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn qmul(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, GroupFiltError> {
    Ok(project(&a.mul(b)?))
}

/// e*f = ad(e)f and e^(2)*f = ad(e)^(2)f = e^(2)f − efe + fe^(2).
struct Named {
    one: AlgebraElement,
    e: AlgebraElement,
    e2: AlgebraElement,
    e3: AlgebraElement,
    f: AlgebraElement,
    ef_bracket: AlgebraElement,
    e2f_bracket: AlgebraElement,
}

fn named(ctx: &Arc<AlgebraContext>) -> Result<Named, GroupFiltError> {
    let ie = ctx.basis_of(&Root(vec![1, 0]))[0];
    let i_f = ctx.basis_of(&Root(vec![0, 1]))[0];
    let e = AlgebraElement::basis_vector(ctx, ie);
    let e2 = AlgebraElement::basis_power(ctx, ie, 2);
    let e3 = AlgebraElement::basis_power(ctx, ie, 3);
    let f = AlgebraElement::basis_vector(ctx, i_f);
    let ef_bracket = e.mul(&f)?.sub(&f.mul(&e)?)?;
    let e2f_bracket = e2.mul(&f)?.sub(&e.mul(&f)?.mul(&e)?)?.add(&f.mul(&e2)?)?;
    Ok(Named { one: AlgebraElement::one(ctx), e, e2, e3, f, ef_bracket, e2f_bracket })
}

/// Checks that the ten listed products have a change of basis invertible mod 2 in every weight.
fn listed_basis_ok(zctx: &Arc<AlgebraContext>) -> Result<(bool, usize), GroupFiltError> {
    let n = named(zctx)?;
    let list = vec![
        n.one.clone(),
        n.e.clone(),
        n.e2.clone(),
        n.e3.clone(),
        n.f.clone(),
        n.e.mul(&n.f)?,
        n.e2.mul(&n.f)?,
        n.ef_bracket.clone(),
        n.e.mul(&n.ef_bracket)?,
        n.e2f_bracket.clone(),
    ];
    // Complement monomials, grouped by weight.
    let mut monos: BTreeMap<Root, Vec<Vec<u32>>> = BTreeMap::new();
    for id in 0..zctx.word_algebra().spaces().len() {
        for m in zctx.monomials_of_weight(id) {
            let w = zctx.monomial_weight(m);
            if !in_region(&w) {
                monos.entry(w).or_default().push(m.clone());
            }
        }
    }
    let dim = monos.values().map(Vec::len).sum();
    let mut ok = dim == list.len();
    for (w, ms) in &monos {
        let rows: Vec<Vec<Q>> = list
            .iter()
            .filter(|x| x.weights() == vec![w.clone()])
            .map(|x| ms.iter().map(|m| x.coeff(m)).collect())
            .collect();
        if rows.len() != ms.len() {
            ok = false;
            continue;
        }
        let d = linalg::det(&rows);
        ok &= d.is_integer() && (d.numer() % 2u32) != Zero::zero();
    }
    Ok((ok, dim))
}

fn key(u: &AlgebraElement) -> BTreeMap<Vec<u32>, Q> {
    u.terms().clone()
}

/// Runs the construction for a given m ≥ 3 at height 3 over 𝔽₂.
pub fn density_counterexample(m: i64) -> Result<DensityReport, GroupFiltError> {
    if m < 3 {
        return Err(GroupFiltError::InvalidInput("m must be at least 3".into()));
    }
    let h = 3;
    let s = simply_connected_datum(&standard::hyperbolic(m));
    let zctx = build_context(&s, h, Side::Positive, CoefficientRing::Integers)?;
    let (listed_basis_ok, complement_dim) = listed_basis_ok(&zctx)?;

    let ctx = build_context(&s, h, Side::Positive, CoefficientRing::PrimeField(2))?;
    let n = named(&ctx)?;
    let one = n.one.clone();

    // All ∏ [exp]λ_x x over x ∈ ℬ_{Δ⁺∖Ψ} with λ_x ∈ 𝔽₂.
    let complement: Vec<usize> =
        (0..ctx.basis().len()).filter(|&k| !in_region(&ctx.basis()[k].root)).collect();
    let mut quotient = HashSet::new();
    for mask in 0u32..(1 << complement.len()) {
        let mut acc = one.clone();
        for (bit, &k) in complement.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                acc = qmul(&acc, &twisted_exp_basis(&ctx, k, &Q::one()))?;
            }
        }
        quotient.insert(key(&acc));
    }

    let a = project(&n.one.add(&n.e)?.add(&n.e2)?.add(&n.e3)?);
    let b = project(&n.one.add(&n.f)?);
    let mut group = HashSet::from([key(&one)]);
    let mut queue = VecDeque::from([one.clone()]);
    while let Some(g) = queue.pop_front() {
        for x in [&a, &b] {
            let y = qmul(&g, x)?;
            if group.insert(key(&y)) {
                queue.push_back(y);
            }
        }
    }

    let ab = qmul(&a, &b)?;
    let ba = qmul(&b, &a)?;
    let ab2 = qmul(&ab, &ab)?;
    let ba2 = qmul(&ba, &ba)?;
    let target = project(&one.add(&n.ef_bracket)?.add(&n.e2f_bracket)?);
    let square_identity = ab2 == target && ba2 == target;
    let fourth_power_is_one = qmul(&ab2, &ab2)? == one && qmul(&ba2, &ba2)? == one;
    let exp_e2f = project(&one.add(&n.e2f_bracket)?);
    let missing_exp_e2f = !group.contains(&key(&exp_e2f)) && quotient.contains(&key(&exp_e2f));

    Ok(DensityReport {
        m,
        height_bound: h,
        complement_dim,
        listed_basis_ok,
        quotient_order: quotient.len(),
        word_group_order: group.len(),
        ab_squared: ab2.to_string(),
        square_identity,
        fourth_power_is_one,
        missing_exp_e2f,
    })
}
