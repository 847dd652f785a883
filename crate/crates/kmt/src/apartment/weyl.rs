//! The affine Weyl group W^v ⋉ Q^∨ acting on the apartment, wall reflections and fixators.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::solve_integer_left;
use crate::num::{common_denominator, q, Q, Z};
use crate::rootdata::{Root, RootDatum, WeylElement};

use super::{Apartment, ApartmentError, Filter};

/// y ↦ w(y) + t with w ∈ W^v and t ∈ Q^∨ ⊗ ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineWeylElement {
    pub linear: WeylElement,
    #[serde(with = "crate::num::serde_q::vec")]
    pub translation: Vec<Q>,
}

impl AffineWeylElement {
    pub fn identity(s: &RootDatum) -> Self {
        AffineWeylElement { linear: WeylElement::identity(s), translation: vec![Q::zero(); s.rank_y()] }
    }

    pub fn translation(s: &RootDatum, t: Vec<Q>) -> Self {
        AffineWeylElement { linear: WeylElement::identity(s), translation: t }
    }

    pub fn apply(&self, y: &[Q]) -> Vec<Q> {
        self.linear.apply_v(y).into_iter().zip(&self.translation).map(|(a, b)| a + b).collect()
    }

    /// self ∘ other.
    pub fn compose(&self, other: &AffineWeylElement) -> Self {
        let t = self.linear.apply_v(&other.translation).into_iter().zip(&self.translation).map(|(a, b)| a + b).collect();
        AffineWeylElement { linear: self.linear.compose(&other.linear), translation: t }
    }

    pub fn inverse(&self, s: &RootDatum) -> Self {
        let inv = self.linear.inverse(s);
        let t = inv.apply_v(&self.translation).into_iter().map(|x| -x).collect();
        AffineWeylElement { linear: inv, translation: t }
    }

    /// Equality as maps of V (the word is ignored).
    pub fn same_element(&self, other: &AffineWeylElement) -> bool {
        self.linear.same_element(&other.linear) && self.translation == other.translation
    }

    fn key(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Q>) {
        (self.linear.action_q.clone(), self.linear.action_y.clone(), self.translation.clone())
    }
}

/// α^∨ ∈ Y for a real root α, via α = w(α_j) and α^∨ = w(α_j^∨).
pub fn coroot_of_real(s: &RootDatum, alpha: &Root) -> Result<Vec<i64>, ApartmentError> {
    let a = s.matrix();
    if alpha.is_negative() {
        return Ok(coroot_of_real(s, &alpha.neg())?.into_iter().map(|x| -x).collect());
    }
    let mut cur = alpha.clone();
    let mut word = Vec::new();
    while cur.height() > 1 {
        let Some(i) = (0..a.rank()).find(|&i| a.pairing(&cur.0, i) > 0) else {
            return Err(ApartmentError::InvalidInput(format!("{:?} is not a real root", alpha.0)));
        };
        cur = cur.reflect(a, i);
        word.push(i);
        if !cur.is_positive() {
            return Err(ApartmentError::InvalidInput(format!("{:?} is not a real root", alpha.0)));
        }
    }
    let j = cur
        .0
        .iter()
        .position(|&c| c == 1)
        .filter(|_| cur.height() == 1 && cur.is_positive())
        .ok_or_else(|| ApartmentError::InvalidInput(format!("{:?} is not a real root", alpha.0)))?;
    Ok(WeylElement::from_word(s, &word).apply_y(s.coroot(j)))
}

/// r_{α,k}: y ↦ y − (α(y) + k) α^∨, the reflection in the wall M(α, k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallReflection {
    pub root: Vec<i64>,
    pub k: i64,
    pub element: AffineWeylElement,
}

pub fn wall_reflection(ap: &Apartment, alpha: &Root, k: i64) -> Result<WallReflection, ApartmentError> {
    let s = ap.datum();
    let coroot = coroot_of_real(s, alpha)?;
    let pos = if alpha.is_negative() { alpha.neg() } else { alpha.clone() };
    let mut cur = pos.clone();
    let mut w = Vec::new();
    while cur.height() > 1 {
        let i = (0..s.rank()).find(|&i| s.matrix().pairing(&cur.0, i) > 0).expect("checked by coroot_of_real");
        cur = cur.reflect(s.matrix(), i);
        w.push(i);
    }
    let j = cur.0.iter().position(|&c| c == 1).expect("simple root");
    // s_α = w s_j w⁻¹.
    let mut word = w.clone();
    word.push(j);
    word.extend(w.iter().rev());
    let linear = WeylElement::from_word(s, &word);
    let translation = coroot.iter().map(|&c| -q(c) * q(k)).collect();
    Ok(WallReflection { root: alpha.0.clone(), k, element: AffineWeylElement { linear, translation } })
}

/// The wall parameter k with Ω ⊂ M(α, k), if any.
fn wall_through(ap: &Apartment, omega: &Filter, alpha: &Root) -> Result<Option<Q>, ApartmentError> {
    let constant = |pts: &[Vec<Q>]| {
        let k = -ap.eval(alpha, &pts[0]);
        pts.iter().all(|x| -ap.eval(alpha, x) == k).then_some(k)
    };
    match omega {
        Filter::Points { points } => Ok(constant(points)),
        Filter::Facet { x, facet, .. } => {
            Ok((facet.sign_of(ap, alpha)? == super::FacetSign::Zero).then(|| -ap.eval(alpha, x)))
        }
        Filter::Chimney { x, base, direction, shortening } => {
            let flat = base.sign_of(ap, alpha)? == super::FacetSign::Zero
                && direction.sign_of(ap, alpha)? == super::FacetSign::Zero;
            let y: Vec<Q> = x.iter().zip(shortening).map(|(a, b)| a + b).collect();
            Ok(flat.then(|| -ap.eval(alpha, &y)))
        }
        Filter::Intersection { .. } => {
            Err(ApartmentError::UnsupportedFilterShape("walls containing a half-space intersection".into()))
        }
    }
}

/// The reflections r_{α,k} (α ∈ Φ⁺ up to the height bound, k ∈ ℤ) whose wall contains Ω.
pub fn weyl_fixator_generators(ap: &Apartment, omega: &Filter) -> Result<Vec<WallReflection>, ApartmentError> {
    omega.validate(ap)?;
    let mut out = Vec::new();
    for alpha in ap.positive_real_roots() {
        if let Some(k) = wall_through(ap, omega, alpha)? {
            if k.is_integer() {
                let k = crate::num::to_i64(k.numer()).ok_or_else(|| ApartmentError::InvalidInput("k overflow".into()))?;
                out.push(wall_reflection(ap, alpha, k)?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum FixatorComparison {
    /// Every fixer with linear part of length ≤ cap lies in the group generated by the wall
    /// reflections through Ω.
    Equal { cap: usize, fixers: usize },
    /// An element of W^a fixing Ω that is not generated by the wall reflections through Ω.
    StrictlyLargerWithWitness { witness: AffineWeylElement },
    Unknown { cap: usize },
}

/// Integral t ∈ Q^∨ = ⊕ ℤα_i^∨, if t lies in it.
fn in_coroot_lattice(s: &RootDatum, t: &[Q]) -> bool {
    if !common_denominator(t).is_one() {
        return false;
    }
    let m: Vec<Vec<Z>> = s.coroots().iter().map(|c| c.iter().map(|&x| Z::from(x)).collect()).collect();
    let b: Vec<Z> = t.iter().map(|x| x.numer().clone()).collect();
    solve_integer_left(&m, &b).is_some()
}

/// Compares the pointwise fixator of a finite Ω in W^a with ⟨r_{α,k} : Ω ⊂ M(α,k)⟩.
///
/// Linear parts are enumerated by breadth-first search over words of length ≤ cap; the
/// translation is then forced by the first point. The generated group is closed under
/// products of at most `cap` generators; when that search terminates early it is complete.
pub fn fixator_compare(ap: &Apartment, omega: &Filter, cap: usize) -> Result<FixatorComparison, ApartmentError> {
    let Filter::Points { points } = omega else {
        return Err(ApartmentError::UnsupportedFilterShape("fixator comparison needs a point set".into()));
    };
    omega.validate(ap)?;
    let s = ap.datum();
    let x0 = &points[0];

    let mut fixers = Vec::new();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([WeylElement::identity(s)]);
    seen.insert((queue[0].action_q.clone(), queue[0].action_y.clone()));
    while let Some(w) = queue.pop_front() {
        let wx = w.apply_v(x0);
        let t: Vec<Q> = x0.iter().zip(&wx).map(|(a, b)| a - b).collect();
        if in_coroot_lattice(s, &t) {
            let g = AffineWeylElement { linear: w.clone(), translation: t };
            if points.iter().all(|x| g.apply(x) == *x) {
                fixers.push(g);
            }
        }
        if w.word.len() < cap {
            for i in 0..s.rank() {
                let nw = w.then_simple(s, i);
                if seen.insert((nw.action_q.clone(), nw.action_y.clone())) {
                    queue.push_back(nw);
                }
            }
        }
    }

    let gens: Vec<AffineWeylElement> = weyl_fixator_generators(ap, omega)?.into_iter().map(|r| r.element).collect();
    const SIZE_LIMIT: usize = 50_000;
    let id = AffineWeylElement::identity(s);
    let mut group = HashSet::from([id.key()]);
    let mut frontier = vec![id];
    let mut complete = false;
    for _ in 0..cap {
        let mut next = Vec::new();
        for g in &frontier {
            for r in &gens {
                let h = g.compose(r);
                if group.insert(h.key()) {
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        if group.len() > SIZE_LIMIT {
            break;
        }
        frontier = next;
    }
    if gens.is_empty() {
        complete = true;
    }

    let missing = fixers.iter().find(|f| !group.contains(&f.key()));
    Ok(match missing {
        None => FixatorComparison::Equal { cap, fixers: fixers.len() },
        Some(f) if complete => FixatorComparison::StrictlyLargerWithWitness { witness: f.clone() },
        Some(_) => FixatorComparison::Unknown { cap },
    })
}
