//! The integral divided-power enveloping algebra 𝒰 truncated by height: word model, ℤ-forms,
//! PBW bases, exponential sequences, twisted exponentials, Mitzman polynomials and commutator
//! constants.

mod commutator;
mod context;
mod element;
pub mod mitzman;
mod wordalg;

pub use commutator::{commutator_constants, CommutatorEntry};
pub use context::{
    build_context, build_context_with, AlgebraContext, BasisElement, ExpStrategy, Monomial, PbwCheck, Side,
};
pub use element::{tensor_within, AlgebraElement, TensorElement, TermJson};
pub use mitzman::{mitzman_lambda, mitzman_sequence, mitzman_specialize, mitzman_suite, MitzmanRow};
pub use wordalg::{HVec, WeightSpace, WordAlgebra, WEIGHT_DIM_CAP};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg;
use crate::num::{factorial, q, qz, ScalarError, Q};
use crate::rootdata::{classify_vector, KacMoodyMatrix, Root, VectorClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvAlgError {
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("non-integral structure: {0}")]
    NonIntegralStructure(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("the Mitzman strategy needs the affine Ã₁ matrix")]
    NotAffineContext,
    #[error("no integral group-like lift in degree {0}")]
    NoIntegralSolution(u32),
    #[error("elements belong to different contexts")]
    ContextMismatch,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("exponential sequence too short for the height bound")]
    InsufficientDepth,
    #[error("pair is not prenilpotent: {0}")]
    NotPrenilpotent(String),
    #[error("commutator constant is not an integer: {0}")]
    NonIntegralConstant(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// mult(α) = dim g_α for every nonzero α ≥ 0 of height ≤ h.
pub fn primitive_dimensions(
    a: &KacMoodyMatrix,
    h: u32,
) -> Result<BTreeMap<Vec<i64>, usize>, EnvAlgError> {
    let alg = WordAlgebra::new(a, h)?;
    Ok((1..alg.spaces().len())
        .filter_map(|id| {
            let d = alg.lie_basis(id).len();
            (d > 0).then(|| (alg.space(id).weight.clone(), d))
        })
        .collect())
}

/// g_{αℚ} and g_{αℤ} in weight α.
#[derive(Debug, Clone)]
pub struct PrimitiveSpace {
    /// Primitive solutions of ∇y = y⊗1 + 1⊗y (RREF rows, standard-word coordinates).
    pub rational_basis: Vec<Vec<Q>>,
    /// ℤ-basis of g_{αℤ} as elements.
    pub lattice: Vec<AlgebraElement>,
}

impl PrimitiveSpace {
    pub fn dim(&self) -> usize {
        self.rational_basis.len()
    }
}

pub fn primitive_space(ctx: &Arc<AlgebraContext>, alpha: &Root) -> Result<PrimitiveSpace, EnvAlgError> {
    if alpha.height().unsigned_abs() > u64::from(ctx.height_bound()) {
        return Err(EnvAlgError::InvalidInput(format!("{:?} exceeds the height bound", alpha.0)));
    }
    let pos: Vec<i64> = alpha.0.iter().map(|c| c.abs()).collect();
    let Some(id) = ctx.word_algebra().weight_id(&pos) else {
        return Err(EnvAlgError::InvalidInput(format!("{:?} is not a weight of 𝒰", alpha.0)));
    };
    let rational_basis = ctx.word_algebra().primitive_basis(id);
    let lattice = ctx
        .integral_root_space(alpha)
        .iter()
        .map(|v| AlgebraElement::from_word_vector(ctx, &(id, v.clone())))
        .collect();
    Ok(PrimitiveSpace { rational_basis, lattice })
}

/// Exponential sequence x^{[0]}, …, x^{[n_max]} of an element of g_{αℤ}.
#[derive(Debug, Clone)]
pub struct ExponentialSequence {
    pub root: Root,
    pub terms: Vec<AlgebraElement>,
}

impl ExponentialSequence {
    pub fn x(&self) -> &AlgebraElement {
        &self.terms[1]
    }

    pub fn n_max(&self) -> u32 {
        (self.terms.len() - 1) as u32
    }

    /// Σ λⁿ x^{[n]}; the sequence must reach the height bound.
    pub fn twisted_exp(&self, lambda: &Q) -> Result<AlgebraElement, EnvAlgError> {
        let ctx = self.terms[0].context().clone();
        let ht = self.root.height().unsigned_abs() as u32;
        if ht > 0 && self.n_max() < ctx.height_bound() / ht {
            return Err(EnvAlgError::InsufficientDepth);
        }
        let mut acc = AlgebraElement::zero(&ctx);
        let mut pow = Q::one();
        for t in &self.terms {
            acc = acc.add(&t.scale(&pow))?;
            pow *= lambda;
        }
        Ok(acc)
    }
}

/// Which exponential-sequence rule to apply to a given x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceStrategy {
    /// x^{[n]} = xⁿ/n!; requires a real root.
    Real,
    /// Λ_p(c·h_n, c·h_{2n}, …) for x = c·h_n in type Ã₁.
    MitzmanAffine,
    /// The HNF-minimal group-like integral lift.
    Solver,
}

fn single_weight(x: &AlgebraElement) -> Result<(usize, Vec<Q>), EnvAlgError> {
    let mut v = x.to_word_vectors();
    if v.len() != 1 {
        return Err(EnvAlgError::NotHomogeneous);
    }
    Ok(v.pop_first().expect("one weight"))
}

/// Terms x^{[0..=n_max]}; x must be a nonzero element of some g_{αℤ} (or zero, giving 1, 0, 0, …).
pub fn exponential_sequence(
    ctx: &Arc<AlgebraContext>,
    x: &AlgebraElement,
    n_max: u32,
    strategy: SequenceStrategy,
) -> Result<ExponentialSequence, EnvAlgError> {
    if !Arc::ptr_eq(ctx, x.context()) {
        return Err(EnvAlgError::ContextMismatch);
    }
    let one = AlgebraElement::one(ctx);
    if x.is_zero() {
        let mut terms = vec![one, AlgebraElement::zero(ctx)];
        terms.extend((1..n_max).map(|_| AlgebraElement::zero(ctx)));
        terms.truncate(n_max as usize + 1);
        return Ok(ExponentialSequence { root: Root::zero(ctx.datum().rank()), terms });
    }
    let (id, v) = single_weight(x)?;
    let alg = ctx.word_algebra();
    let weight = alg.space(id).weight.clone();
    if weight.iter().all(|&c| c == 0) {
        return Err(EnvAlgError::NotHomogeneous);
    }
    let mut lie = alg.lie_basis(id).to_vec();
    let r0 = linalg::rank(&lie);
    lie.push(v.clone());
    if linalg::rank(&lie) != r0 {
        return Err(EnvAlgError::InvalidInput("x is not in a root space".into()));
    }
    if !ctx.is_integral(&(id, v.clone())) {
        return Err(EnvAlgError::InvalidInput("x is not integral".into()));
    }
    let root = match ctx.side() {
        Side::Positive => Root(weight.clone()),
        Side::Negative => Root(weight.iter().map(|c| -c).collect()),
    };
    let real = classify_vector(ctx.datum().matrix(), &Root(weight.clone())) == VectorClass::Real;
    let wid = |n: u32| -> Option<usize> {
        alg.weight_id(&weight.iter().map(|c| c * i64::from(n)).collect::<Vec<_>>())
    };
    let reach = (1..=n_max).take_while(|&n| wid(n).is_some()).last().unwrap_or(0);
    let vectors: Vec<Vec<Q>> = match strategy {
        SequenceStrategy::Real => {
            if !real {
                return Err(EnvAlgError::InvalidInput("the real strategy needs a real root".into()));
            }
            let mut out = vec![vec![Q::one()], v.clone()];
            let mut cur: HVec = (id, v.clone());
            for n in 2..=reach {
                cur = alg.mul(&cur, &(id, v.clone())).expect("within bound");
                let y: Vec<Q> = cur.1.iter().map(|c| c / qz(factorial(n))).collect();
                if !ctx.is_integral(&(cur.0, y.clone())) {
                    return Err(EnvAlgError::NoIntegralSolution(n));
                }
                out.push(y);
            }
            out
        }
        SequenceStrategy::Solver => ctx.solver_powers(id, &v, reach)?,
        SequenceStrategy::MitzmanAffine => {
            if ctx.strategy() != ExpStrategy::MitzmanAffine {
                return Err(EnvAlgError::NotAffineContext);
            }
            let n = weight[0] as usize;
            if weight != [n as i64, n as i64] {
                return Err(EnvAlgError::InvalidInput("x must lie in some g_{nδ}".into()));
            }
            let loop_h = mitzman::loop_cartan_elements(alg);
            let hn = &loop_h[n - 1];
            let k = hn.iter().position(|c| !c.is_zero()).expect("h_n ≠ 0");
            let c = &v[k] / &hn[k];
            let mut ys: Vec<HVec> = vec![alg.one()];
            for p in 1..=reach as usize {
                let target = wid(p as u32).expect("within reach");
                let mut acc = alg.zero_at(target).1;
                for j in 1..=p {
                    let hid = wid(j as u32).expect("within reach");
                    let hj: Vec<Q> = loop_h[j * n - 1].iter().map(|x| x * &c).collect();
                    let prod = alg.mul(&(hid, hj), &ys[p - j]).expect("within bound");
                    wordalg::axpy(&mut acc, &Q::one(), &prod.1);
                }
                let inv = Q::one() / q(p as i64);
                let y = (target, acc.into_iter().map(|x| x * &inv).collect::<Vec<_>>());
                if !ctx.is_integral(&y) {
                    return Err(EnvAlgError::NoIntegralSolution(p as u32));
                }
                ys.push(y);
            }
            ys.into_iter().map(|y| y.1).collect()
        }
    };
    let mut terms = vec![one];
    for (n, y) in vectors.iter().enumerate().skip(1) {
        let t = wid(n as u32).expect("within reach");
        terms.push(AlgebraElement::from_word_vector(ctx, &(t, y.clone())));
    }
    terms.truncate(n_max as usize + 1);
    while terms.len() < n_max as usize + 1 {
        terms.push(AlgebraElement::zero(ctx).mark_truncated(true));
    }
    Ok(ExponentialSequence { root, terms })
}

/// The exponential sequence of a basis vector x ∈ ℬ as fixed by the context.
pub fn basis_sequence(ctx: &Arc<AlgebraContext>, k: usize) -> ExponentialSequence {
    let b = &ctx.basis()[k];
    let terms = (0..=b.n_max()).map(|n| AlgebraElement::basis_power(ctx, k, n)).collect();
    ExponentialSequence { root: b.root.clone(), terms }
}

/// [exp]λx for a basis vector x_k = Σ λⁿ [n·e_k].
pub fn twisted_exp_basis(ctx: &Arc<AlgebraContext>, k: usize, lambda: &Q) -> AlgebraElement {
    let b = &ctx.basis()[k];
    let mut out = AlgebraElement::zero(ctx);
    let mut pow = Q::one();
    for n in 0..=b.n_max() {
        let mut m = vec![0; ctx.basis().len()];
        m[k] = n;
        out.add_term(m, ctx.ring().norm(pow.clone()));
        pow *= lambda;
    }
    out
}

/// x^{[n]}·x^{[m]} − binom(n+m, n)·x^{[n+m]} stays in the span of monomials that use ℬ_{rα}, r ≥ 2.
pub fn divided_power_defect_ok(seq: &ExponentialSequence) -> Result<bool, EnvAlgError> {
    let ctx = seq.terms[0].context().clone();
    let alpha = seq.root.clone();
    let mult_idx: Vec<usize> = (2..=ctx.height_bound() as i64)
        .flat_map(|r| ctx.basis_of(&alpha.scale(r)).to_vec())
        .collect();
    let n_max = seq.n_max() as usize;
    for n in 1..=n_max {
        for m in 1..=n_max.saturating_sub(n) {
            let prod = seq.terms[n].mul(&seq.terms[m])?;
            let c = qz(crate::num::binom((n + m) as i64, n as u32));
            let d = prod.sub(&seq.terms[n + m].scale(&c))?;
            if d.terms().keys().any(|mono| mult_idx.iter().all(|&k| mono[k] == 0)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether u is group-like at truncation: ∇u = u ⊗̂ u and ε(u) = 1.
pub fn is_group_like(u: &AlgebraElement) -> bool {
    let ctx = u.context();
    let lhs = tensor_within(ctx, &u.coproduct());
    let rhs = tensor_within(ctx, &u.tensor(u));
    lhs == rhs && u.counit().is_one()
}

/// Whether [exp]λx is inverted by its antipode image.
pub fn antipode_inverts(u: &AlgebraElement) -> Result<bool, EnvAlgError> {
    let inv = u.antipode()?;
    let p = u.mul(&inv)?;
    Ok(p == AlgebraElement::one(u.context()))
}
