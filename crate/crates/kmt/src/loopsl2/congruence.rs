//! Congruence descriptions of the Ω-subgroups of SL₂ over K[t, t⁻¹] (and its completions) for
//! Ω in the hyperplane δ = 0 of the Ã₁ apartment.
//!
//! With A = ⌈max_{x∈Ω} −ᾱ₁(x)⌉ and B = ⌈max_{x∈Ω} ᾱ₁(x)⌉, the root groups U_{α₁+nδ,Ω} and
//! U_{α₀+nδ,Ω} have parameters in ϖ^A𝒪 and ϖ^B𝒪. Conjugating by diag(ϖ^A, 1) reduces every test
//! to the shape Ω = {0, z} with ᾱ₁(z) = p = A + B.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::num::{ceil_q, to_i64, Q, ValuedFieldModel};

use super::freeprod::MembershipReport;
use super::laurent::{Laurent, LaurentMatrix};
use super::LoopError;

/// The f_Ω values on the two families of real roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaData {
    /// f_Ω(α₁ + nδ) for every n.
    pub upper: i64,
    /// f_Ω(α₀ + nδ) for every n.
    pub lower: i64,
}

impl OmegaData {
    /// Ω = {0, z} with δ(z) = 0 and ᾱ₁(z) = p ≥ 0.
    pub fn pair(p: i64) -> Self {
        OmegaData { upper: 0, lower: p }
    }

    /// From points given as (δ(x), ᾱ₁(x)).
    pub fn from_points(points: &[(Q, Q)]) -> Result<Self, LoopError> {
        if points.is_empty() || points.iter().any(|(d, _)| !d.is_zero()) {
            return Err(LoopError::UnsupportedOmega(
                "only finite sets in the hyperplane δ = 0 have a congruence description".into(),
            ));
        }
        let up = points.iter().map(|(_, a)| -a.clone()).max().expect("nonempty");
        let lo = points.iter().map(|(_, a)| a.clone()).max().expect("nonempty");
        let conv = |x: &Q| to_i64(&ceil_q(x)).ok_or_else(|| LoopError::UnsupportedOmega("value too large".into()));
        Ok(OmegaData { upper: conv(&up)?, lower: conv(&lo)? })
    }

    /// p = A + B, the ϖ-depth of the normalized shape.
    pub fn depth(&self) -> i64 {
        self.upper + self.lower
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaGroup {
    /// U_Ω^{ma+} ⊂ SL₂(K[[t]]).
    UmaPlus,
    /// U_Ω^{pm+} = U_Ω^{ma+} ∩ SL₂(K[t, t⁻¹]).
    UpmPlus,
    /// U_Ω^{ma−} ⊂ SL₂(K[[t⁻¹]]).
    UmaMinus,
    /// U_Ω^{nm−} = U_Ω^{ma−} ∩ SL₂(K[t, t⁻¹]).
    UnmMinus,
    /// V_Ω: SL₂(𝒪[t, t⁻¹]) with a, d ≡ 1 and c ≡ 0 modulo ϖ^p.
    VOmega,
    /// V_Ω·N̂_Ω with N̂_Ω = {diag(u tⁿ, u⁻¹ t⁻ⁿ) : u ∈ 𝒪^*, n ∈ ℤ} (p ≥ 1).
    VOmegaNHat,
    /// The pointwise fixator G_Ω = ∩_{x∈Ω} G_x, with G_0 = SL₂(𝒪[t, t⁻¹]).
    GOmega,
}

fn conj_normalize(g: &LaurentMatrix, omega: &OmegaData, model: &ValuedFieldModel) -> LaurentMatrix {
    let s = model.pi_pow(-omega.upper);
    let e = g.entries();
    let entries = vec![
        vec![e[0][0].clone(), e[0][1].scale(&s)],
        vec![e[1][0].scale(&(Q::one() / &s)), e[1][1].clone()],
    ];
    LaurentMatrix::new(*g.ring(), entries, g.prec()).expect("2 × 2")
}

struct Checker<'a> {
    model: &'a ValuedFieldModel,
    witness: Option<String>,
}

impl Checker<'_> {
    fn fail(&mut self, msg: String) {
        if self.witness.is_none() {
            self.witness = Some(msg);
        }
    }

    /// Every coefficient has ω ≥ k and every degree lies in [lo, hi].
    fn require(&mut self, name: &str, x: &Laurent, k: i64, lo: Option<i64>, hi: Option<i64>) {
        for (d, c) in x.terms() {
            if !self.model.val_at_least(c, k) {
                self.fail(format!("{name}: coefficient {c} of t^{d} has valuation < {k}"));
                return;
            }
            if lo.is_some_and(|l| *d < l) || hi.is_some_and(|h| *d > h) {
                self.fail(format!("{name}: degree {d} out of range"));
                return;
            }
        }
    }
}

/// Whether g belongs to the chosen Ω-subgroup, with the first violated condition as witness.
pub fn uma_membership_sl2(
    g: &LaurentMatrix,
    omega: &OmegaData,
    group: OmegaGroup,
    model: &ValuedFieldModel,
) -> Result<MembershipReport, LoopError> {
    if g.size() != 2 {
        return Err(LoopError::Shape);
    }
    if !g.has_unit_det() {
        return Err(LoopError::NotSpecialLinear);
    }
    let p = omega.depth();
    if p < 0 {
        return Err(LoopError::UnsupportedOmega("f_Ω(α) + f_Ω(−α) < 0".into()));
    }
    let h = conj_normalize(g, omega, model);
    let one = Laurent::one();
    let (a, b, c, d) = (h.entry(0, 0), h.entry(0, 1), h.entry(1, 0), h.entry(1, 1));
    let (am, dm) = (a.sub(&one), d.sub(&one));
    let mut ck = Checker { model, witness: None };
    match group {
        OmegaGroup::UmaPlus | OmegaGroup::UpmPlus => {
            // 𝒪[[t]] (resp. 𝒪[t]); a, d ≡ 1 and c ≡ 0 modulo ϖ^p t.
            ck.require("b", b, 0, Some(0), None);
            for (name, x) in [("a − 1", &am), ("d − 1", &dm), ("c", c)] {
                ck.require(name, x, p, Some(1), None);
            }
            if group == OmegaGroup::UpmPlus && g.prec().is_some() {
                ck.fail("series input for a polynomial group".into());
            }
        }
        OmegaGroup::UmaMinus | OmegaGroup::UnmMinus => {
            // 𝒪[[t⁻¹]] (resp. 𝒪[t⁻¹]); a, d ≡ 1 mod ϖ^p t⁻¹, b ≡ 0 mod t⁻¹, c ≡ 0 mod ϖ^p.
            ck.require("b", b, 0, None, Some(-1));
            ck.require("c", c, p, None, Some(0));
            for (name, x) in [("a − 1", &am), ("d − 1", &dm)] {
                ck.require(name, x, p, None, Some(-1));
            }
        }
        OmegaGroup::VOmega => {
            ck.require("b", b, 0, None, None);
            for (name, x) in [("a − 1", &am), ("d − 1", &dm), ("c", c)] {
                ck.require(name, x, p, None, None);
            }
        }
        OmegaGroup::GOmega => {
            for (name, x) in [("a", a), ("b", b), ("d", d)] {
                ck.require(name, x, 0, None, None);
            }
            ck.require("c", c, p, None, None);
        }
        OmegaGroup::VOmegaNHat => {
            if p < 1 {
                return Err(LoopError::UnsupportedOmega("N̂_Ω is described only for p ≥ 1".into()));
            }
            // g = v·diag(u tⁿ, u⁻¹t⁻ⁿ) forces a ≡ u tⁿ modulo ϖ^p with u a unit.
            let reduced: Vec<(i64, Q)> =
                a.terms().iter().filter(|(_, x)| !model.val_at_least(x, p)).map(|(k, x)| (*k, x.clone())).collect();
            match reduced.as_slice() {
                [(n, u)] if model.is_unit(u) => {
                    let inv = Laurent::monomial(-n, Q::one() / u);
                    let fwd = Laurent::monomial(*n, u.clone());
                    let v = [
                        [a.mul(&inv), b.mul(&fwd)],
                        [c.mul(&inv), d.mul(&fwd)],
                    ];
                    ck.require("v_b", &v[0][1], 0, None, None);
                    ck.require("v_a − 1", &v[0][0].sub(&one), p, None, None);
                    ck.require("v_d − 1", &v[1][1].sub(&one), p, None, None);
                    ck.require("v_c", &v[1][0], p, None, None);
                }
                _ => ck.fail(format!("a = {a} is not a unit monomial modulo ϖ^{p}")),
            }
        }
    }
    Ok(MembershipReport { member: ck.witness.is_none(), witness: ck.witness })
}

/// (1 + ϖ^{p−1}t, 1; −ϖ^{2p−2}t², 1 − ϖ^{p−1}t), which fixes {0, z} but is not in V_Ω·N̂_Ω for p ≥ 2.
pub fn fixator_witness(p: i64, model: &ValuedFieldModel) -> LaurentMatrix {
    let w = model.pi_pow(p - 1);
    let a = Laurent::from_terms([(0, Q::one()), (1, w.clone())]);
    let d = Laurent::from_terms([(0, Q::one()), (1, -w.clone())]);
    let c = Laurent::monomial(2, -(&w * &w));
    LaurentMatrix::sl2(crate::num::CoefficientRing::ValuedField(*model), a, Laurent::one(), c, d)
        .expect("2 × 2")
}
