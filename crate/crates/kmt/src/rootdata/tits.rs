use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::num::Q;

use super::{enumerate_root_set, RootDatum, VectorClass, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TitsMembership {
    /// `representative = w(v)` lies in C̄_f for `w` given by `word`. `open` records whether the
    /// representative's face has a finite-type stabilizer, i.e. v lies in the interior of 𝒯.
    Inside {
        #[serde(with = "crate::num::serde_q::vec")]
        representative: Vec<Q>,
        word: Vec<usize>, boundary: Vec<usize>, open: bool },
    /// A positive imaginary root is negative on v; Δ⁺_im is W-stable and nonnegative on 𝒯.
    OutsideCertified { imaginary_root: Vec<i64> },
    Indeterminate { steps: usize },
}

/// Descent into the fundamental chamber: while some ᾱ_i(v) < 0 (smallest such i), apply s_i.
pub fn tits_cone_membership(s: &RootDatum, v: &[Q], step_cap: usize) -> TitsMembership {
    let a = s.matrix();
    let cert_height = 2 * a.rank() as u32 + 2;
    let imaginary: Vec<Vec<i64>> = enumerate_root_set(a, cert_height)
        .map(|set| {
            set.into_iter().filter(|(_, c)| *c == VectorClass::Imaginary).map(|(r, _)| r.0).collect()
        })
        .unwrap_or_default();
    if let Some(beta) = imaginary.iter().find(|b| s.eval_q(b, v).is_negative()) {
        return TitsMembership::OutsideCertified { imaginary_root: beta.clone() };
    }
    let mut cur = v.to_vec();
    let mut word: Vec<usize> = Vec::new();
    for _ in 0..=step_cap {
        let values: Vec<Q> = (0..s.rank()).map(|i| s.eval_q(&unit(s.rank(), i), &cur)).collect();
        match values.iter().position(Signed::is_negative) {
            None => {
                let boundary: Vec<usize> = (0..s.rank()).filter(|&i| values[i].is_zero()).collect();
                let open = a.subset_is_finite_type(&boundary);
                // word lists the reflections in application order; w = s_{last} ⋯ s_{first}.
                let w: Vec<usize> = word.iter().rev().copied().collect();
                return TitsMembership::Inside { representative: cur, word: w, boundary, open };
            }
            Some(i) => {
                cur = WeylElement::simple(s, i).apply_v(&cur);
                word.push(i);
            }
        }
    }
    TitsMembership::Indeterminate { steps: step_cap }
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    (0..r).map(|k| i64::from(k == i)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::{essential_adjoint_datum, simply_connected_datum, standard};
    use super::*;
    use crate::num::{q, qr};

    #[test]
    fn chamber_point_is_inside() {
        let s = simply_connected_datum(&standard::a2());
        let r = tits_cone_membership(&s, &[q(1), q(1)], 10);
        assert!(matches!(r, TitsMembership::Inside { ref word, open: true, .. } if word.is_empty()));
    }

    #[test]
    fn affine_level_sign() {
        let s = essential_adjoint_datum(&standard::a1_affine());
        // δ(v) = v0 + v1 < 0
        let r = tits_cone_membership(&s, &[q(1), q(-3)], 50);
        assert_eq!(r, TitsMembership::OutsideCertified { imaginary_root: vec![1, 1] });
        let v = [q(-7), qr(15, 2)];
        let TitsMembership::Inside { representative, word, .. } = tits_cone_membership(&s, &v, 50)
        else {
            panic!()
        };
        let w = WeylElement::from_word(&s, &word);
        assert_eq!(w.apply_v(&v), representative);
        assert!(representative.iter().all(|x| !x.is_negative()));
    }
}
