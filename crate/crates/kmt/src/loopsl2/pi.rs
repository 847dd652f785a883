//! The natural representation π of the Ã₁ algebra on K[t, t⁻¹]².
//!
//! Letters act by e_1 ↦ E₁₂, e_0 ↦ t·E₂₁ and f_1 ↦ −E₂₁, f_0 ↦ −t⁻¹·E₁₂, so that
//! [e_i, f_i] = −α_i^∨ with α_1^∨ = −α_0^∨ = h = diag(1, −1).

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::envalg::{AlgebraContext, AlgebraElement, Side};
use crate::num::{binom_q, q, CoefficientRing, Q};

use super::laurent::{Laurent, LaurentMatrix};
use super::LoopError;

fn is_affine_a1(ctx: &AlgebraContext) -> bool {
    ctx.datum().matrix().entries() == [vec![2, -2], vec![-2, 2]]
}

fn letter(ring: CoefficientRing, side: Side, i: usize) -> LaurentMatrix {
    let (a, b, c, d) = match (side, i) {
        (Side::Positive, 1) => (Laurent::zero(), Laurent::one(), Laurent::zero(), Laurent::zero()),
        (Side::Positive, _) => (Laurent::zero(), Laurent::zero(), Laurent::monomial(1, Q::one()), Laurent::zero()),
        (Side::Negative, 1) => (Laurent::zero(), Laurent::zero(), Laurent::constant(-Q::one()), Laurent::zero()),
        (Side::Negative, _) => (Laurent::zero(), Laurent::monomial(-1, -Q::one()), Laurent::zero(), Laurent::zero()),
    };
    LaurentMatrix::sl2(ring, a, b, c, d).expect("2 × 2")
}

/// π(x) for an element of 𝒰^± of an Ã₁ context; coefficients are taken in `ring`.
pub fn pi_image(x: &AlgebraElement, ring: CoefficientRing) -> Result<LaurentMatrix, LoopError> {
    let ctx = x.context();
    if !is_affine_a1(ctx) {
        return Err(LoopError::NotAffineContext);
    }
    let letters = [letter(ring, ctx.side(), 0), letter(ring, ctx.side(), 1)];
    let alg = ctx.word_algebra();
    let zero = LaurentMatrix::identity(ring, 2, None).scale(&Q::zero());
    let mut acc = zero;
    for (m, c) in x.terms() {
        let (id, pos) = ctx.locate(m).expect("monomial within bound");
        let v = ctx.word_combination(id, pos);
        for (word, coef) in alg.space(id).words.iter().zip(v) {
            if coef.is_zero() {
                continue;
            }
            let mut t = LaurentMatrix::identity(ring, 2, None);
            for &l in word {
                t = t.mul(&letters[l])?;
            }
            acc = acc.add(&t.scale(&(c * coef)))?;
        }
    }
    Ok(acc)
}

/// π(h) for h = diag(1, −1) ⊗ tⁿ.
fn loop_h(ring: CoefficientRing, n: i64) -> LaurentMatrix {
    LaurentMatrix::diagonal(ring, vec![Laurent::monomial(n, Q::one()), Laurent::monomial(n, -Q::one())], None)
        .expect("2 × 2")
}

/// π(h_n^{[p]}) for the Mitzman sequence, from p·y_p = Σ_{k=1}^{p} π(h_{kn})·y_{p−k} computed in
/// the loop realization.
pub fn pi_mitzman_power(n: i64, p: u32, ring: CoefficientRing) -> Result<LaurentMatrix, LoopError> {
    let qr = CoefficientRing::Rationals;
    let mut ys = vec![LaurentMatrix::identity(qr, 2, None)];
    for k in 1..=p as i64 {
        let mut acc = LaurentMatrix::identity(qr, 2, None).scale(&Q::zero());
        for j in 1..=k {
            acc = acc.add(&loop_h(qr, j * n).mul(&ys[(k - j) as usize])?)?;
        }
        ys.push(acc.scale(&(Q::one() / q(k))));
    }
    let last = ys.pop().expect("nonempty");
    LaurentMatrix::new(ring, last.entries().to_vec(), None)
}

/// t^{np}·binom(h + p − 1, p) evaluated at h = diag(1, −1).
pub fn pi_mitzman_closed_form(n: i64, p: u32, ring: CoefficientRing) -> LaurentMatrix {
    let d = |h: i64| Laurent::monomial(n * i64::from(p), binom_q(&q(h + i64::from(p) - 1), p));
    LaurentMatrix::diagonal(ring, vec![d(1), d(-1)], None).expect("2 × 2")
}

/// π([exp]λh_n) = Σ_{p ≤ k} λ^p π(h_n^{[p]}), as a series known to degree nk.
pub fn pi_twisted_exp_h(n: i64, lambda: &Q, k: u32, ring: CoefficientRing) -> Result<LaurentMatrix, LoopError> {
    let mut acc = LaurentMatrix::identity(CoefficientRing::Rationals, 2, None).scale(&Q::zero());
    for p in 0..=k {
        let t = pi_mitzman_power(n, p, CoefficientRing::Rationals)?;
        acc = acc.add(&t.scale(&num_traits::pow(lambda.clone(), p as usize)))?;
    }
    let entries: Vec<Vec<Laurent>> = acc.entries().to_vec();
    LaurentMatrix::new(ring, entries, Some(n * i64::from(k)))
}

/// diag(1 + λtⁿ + ⋯ + λ^k t^{kn}, 1 − λtⁿ): the expected image at window k.
pub fn expected_twisted_exp_h(n: i64, lambda: &Q, k: u32, ring: CoefficientRing) -> Result<LaurentMatrix, LoopError> {
    let u = Laurent::from_terms(
        (0..=i64::from(k)).map(|p| (n * p, num_traits::pow(lambda.clone(), p as usize))),
    );
    let v = Laurent::from_terms([(0, Q::one()), (n, -lambda.clone())]);
    LaurentMatrix::diagonal(ring, vec![u, v], Some(n * i64::from(k)))
}

/// π of the context's twisted exponential of a basis vector.
pub fn pi_basis_twisted_exp(
    ctx: &Arc<AlgebraContext>,
    k: usize,
    lambda: &Q,
    ring: CoefficientRing,
) -> Result<LaurentMatrix, LoopError> {
    let u = crate::envalg::twisted_exp_basis(ctx, k, lambda);
    pi_image(&u, ring)
}
