//! U⁺ of Ã₁ as the free product of u^s(K[t]) and u^i(tK[t]): unique alternating words and
//! integrality tests.
//!
//! After t = s² and conjugation by diag(s^{1/2}, s^{−1/2}), the entries become (a, s·b, c/s, d)
//! and both free factors consist of unipotents whose parameter has positive degree in s. For an
//! alternating word the row of the first factor then strictly dominates the other row entrywise
//! in degree, so the first factor and its parameter are read off by Euclidean division.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::num::{fmt_q, CoefficientRing, ValuedFieldModel};

use super::laurent::{Laurent, LaurentMatrix};
use super::LoopError;

/// One factor of an alternating word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeFactor {
    /// u^s(q) = (1 q; 0 1), q ∈ K[t] ∖ 0.
    Upper(Laurent),
    /// u^i(r) = (1 0; r 1), r ∈ tK[t] ∖ 0.
    Lower(Laurent),
}

impl FreeFactor {
    pub fn parameter(&self) -> &Laurent {
        match self {
            FreeFactor::Upper(x) | FreeFactor::Lower(x) => x,
        }
    }

    pub fn matrix(&self, ring: CoefficientRing) -> LaurentMatrix {
        match self {
            FreeFactor::Upper(q) => LaurentMatrix::upper(ring, q.clone()),
            FreeFactor::Lower(r) => LaurentMatrix::lower(ring, r.clone()),
        }
        .expect("2 × 2")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub kind: String,
    pub parameter: Vec<(i64, String)>,
}

impl From<&FreeFactor> for FactorJson {
    fn from(f: &FreeFactor) -> Self {
        let kind = match f {
            FreeFactor::Upper(_) => "u_s",
            FreeFactor::Lower(_) => "u_i",
        };
        FactorJson {
            kind: kind.to_string(),
            parameter: f.parameter().terms().iter().map(|(d, c)| (*d, fmt_q(c))).collect(),
        }
    }
}

/// Membership in U⁺: SL₂(K[t]) and upper unitriangular modulo t.
pub fn in_u_plus(g: &LaurentMatrix) -> Result<(), LoopError> {
    if g.size() != 2 || g.prec().is_some() {
        return Err(LoopError::NotInUPlus("expected an exact 2 × 2 matrix".into()));
    }
    if !g.has_unit_det() {
        return Err(LoopError::NotInUPlus("determinant is not 1".into()));
    }
    if g.entries().iter().flatten().any(|x| !x.is_polynomial()) {
        return Err(LoopError::NotInUPlus("entries are not polynomials in t".into()));
    }
    let (a, c, d) = (g.entry(0, 0), g.entry(1, 0), g.entry(1, 1));
    if !a.coeff(0).is_one() || !d.coeff(0).is_one() || !c.coeff(0).is_zero() {
        return Err(LoopError::NotInUPlus("not upper unitriangular modulo t".into()));
    }
    Ok(())
}

fn deg(x: &Laurent) -> i64 {
    x.deg().unwrap_or(i64::MIN)
}

/// The unique reduced alternating word of g ∈ U⁺.
pub fn free_product_normal_form(g: &LaurentMatrix) -> Result<Vec<FreeFactor>, LoopError> {
    in_u_plus(g)?;
    let ring = *g.ring();
    // Balanced entries in s.
    let mut a = g.entry(0, 0).substitute_power(2);
    let mut b = g.entry(0, 1).substitute_power(2).shift(1);
    let mut c = g.entry(1, 0).substitute_power(2).shift(-1);
    let mut d = g.entry(1, 1).substitute_power(2);
    let mut word = Vec::new();
    let bound = 4 + [&a, &b, &c, &d].iter().map(|x| deg(x).max(0)).sum::<i64>();
    for _ in 0..bound {
        let top = deg(&a).max(deg(&b));
        let bottom = deg(&c).max(deg(&d));
        if top == 0 && bottom == 0 && b.is_zero() && c.is_zero() {
            if !(a.is_one() && d.is_one()) {
                return Err(LoopError::NotInUPlus("diagonal remainder is not the identity".into()));
            }
            return Ok(word);
        }
        if top > bottom {
            // First factor u^s: row 1 = q·row 2 + rest. Divide in column 1 unless the
            // remainder is u^s(q) alone, where c = 0.
            let qa = if c.is_zero() { b.div_rem(&d).0 } else { a.div_rem(&c).0 };
            let param = qa
                .shift(-1)
                .divide_exponents(2)
                .ok_or_else(|| LoopError::NotInUPlus("factor parameter is not in K[t]".into()))?;
            a = a.sub(&qa.mul(&c));
            b = b.sub(&qa.mul(&d));
            word.push(FreeFactor::Upper(param.normalize(&ring)?));
        } else if bottom > top {
            if a.is_zero() {
                return Err(LoopError::NotInUPlus("vanishing diagonal entry".into()));
            }
            let qc = c.div_rem(&a).0;
            let param = qc
                .shift(1)
                .divide_exponents(2)
                .filter(|r| r.ord().map_or(false, |o| o >= 1))
                .ok_or_else(|| LoopError::NotInUPlus("factor parameter is not in tK[t]".into()))?;
            c = c.sub(&qc.mul(&a));
            d = d.sub(&qc.mul(&b));
            word.push(FreeFactor::Lower(param.normalize(&ring)?));
        } else {
            return Err(LoopError::NotInUPlus("rows of equal degree".into()));
        }
    }
    Err(LoopError::NotInUPlus("normal form did not terminate".into()))
}

/// ∏ of the factors.
pub fn recompose(word: &[FreeFactor], ring: CoefficientRing) -> LaurentMatrix {
    word.iter()
        .fold(LaurentMatrix::identity(ring, 2, None), |acc, f| acc.mul(&f.matrix(ring)).expect("2 × 2"))
}

/// The two integral subgroups of U⁺ compared here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralSubgroup {
    /// U₀^{++} = 𝔘⁺(𝒪): generated by the root groups over 𝒪, i.e. every free factor has
    /// 𝒪-coefficients.
    U0PlusPlus,
    /// U₀^{pm+}: matrices of SL₂(𝒪[t]) that are upper unitriangular modulo t.
    U0PmPlus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub member: bool,
    /// The offending factor or entry, when not a member.
    pub witness: Option<String>,
}

pub fn integral_membership(
    g: &LaurentMatrix,
    subgroup: IntegralSubgroup,
    model: &ValuedFieldModel,
) -> Result<MembershipReport, LoopError> {
    in_u_plus(g)?;
    let bad = |x: &Laurent| x.terms().values().any(|c| !model.in_o(c));
    match subgroup {
        IntegralSubgroup::U0PlusPlus => {
            let word = free_product_normal_form(g)?;
            let witness = word.iter().enumerate().find(|(_, f)| bad(f.parameter())).map(|(k, f)| {
                let kind = if matches!(f, FreeFactor::Upper(_)) { "u_s" } else { "u_i" };
                format!("factor {k}: {kind}({})", f.parameter())
            });
            Ok(MembershipReport { member: witness.is_none(), witness })
        }
        IntegralSubgroup::U0PmPlus => {
            let names = [["a", "b"], ["c", "d"]];
            let witness = (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .find(|&(i, j)| bad(g.entry(i, j)))
                .map(|(i, j)| format!("entry {} = {}", names[i][j], g.entry(i, j)));
            Ok(MembershipReport { member: witness.is_none(), witness })
        }
    }
}
