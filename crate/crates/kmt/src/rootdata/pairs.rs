use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::roots::RootSign;
use super::{classify_vector, Root, RootDataError, RootDatum, VectorClass, WeylElement, ROOT_CAP};

/// γ = pα + qβ in an interval [α, β].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalEntry {
    pub p: i64,
    pub q: i64,
    pub root: Root,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum PairClass {
    /// `w` sends both roots into Δ⁺, `w_prime` into Δ⁻; the interval is ordered by increasing p/q.
    Prenilpotent { w: Vec<usize>, w_prime: Vec<usize>, interval: Vec<IntervalEntry> },
    NotPrenilpotent { reason: String },
    Unknown,
}

/// Inversion set N(x) = {γ > 0 : xγ < 0}, built along the word of x.
///
/// N(x s_j) = s_j(N(x) ∖ {α_j}) ∪ ({α_j} if α_j ∉ N(x)).
fn inversion_set(s: &RootDatum, word: &[usize]) -> BTreeSet<Root> {
    let a = s.matrix();
    let mut n: BTreeSet<Root> = BTreeSet::new();
    for &j in word {
        let aj = Root::simple(s.rank(), j);
        let had = n.remove(&aj);
        let mut next: BTreeSet<Root> = n.iter().map(|g| g.reflect(a, j)).collect();
        if !had {
            next.insert(aj);
        }
        n = next;
    }
    n
}

/// Solves γ = pα + qβ for independent α, β.
fn coefficients(alpha: &Root, beta: &Root, gamma: &Root) -> Option<(i64, i64)> {
    let r = alpha.rank();
    for i in 0..r {
        for j in (i + 1)..r {
            let det = alpha.0[i] * beta.0[j] - alpha.0[j] * beta.0[i];
            if det != 0 {
                let pn = gamma.0[i] * beta.0[j] - gamma.0[j] * beta.0[i];
                let qn = alpha.0[i] * gamma.0[j] - alpha.0[j] * gamma.0[i];
                if pn % det != 0 || qn % det != 0 {
                    return None;
                }
                let (p, q) = (pn / det, qn / det);
                return (alpha.combo(p, beta, q) == *gamma).then_some((p, q));
            }
        }
    }
    None
}

/// Bounded search for prenilpotence witnesses of {α, β} among Weyl words of length ≤ L.
pub fn classify_pair(
    s: &RootDatum,
    alpha: &Root,
    beta: &Root,
    depth: usize,
) -> Result<PairClass, RootDataError> {
    let a = s.matrix();
    for g in [alpha, beta] {
        if classify_vector(a, g) != VectorClass::Real {
            return Err(RootDataError::NotRealRoot(g.0.clone()));
        }
    }
    if *beta == alpha.neg() {
        return Ok(PairClass::NotPrenilpotent { reason: "β = −α".into() });
    }
    if alpha != beta {
        for p in 1..=(depth as i64) {
            for q in 1..=(depth as i64) {
                let g = alpha.combo(p, beta, q);
                if classify_vector(a, &g) == VectorClass::Imaginary {
                    return Ok(PairClass::NotPrenilpotent {
                        reason: format!("{p}α + {q}β = {:?} is an imaginary root", g.0),
                    });
                }
            }
        }
    }
    let mut w_pos: Option<WeylElement> = None;
    let mut w_neg: Option<WeylElement> = None;
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut queue = VecDeque::from([WeylElement::identity(s)]);
    seen.insert(WeylElement::identity(s).action_q);
    while let Some(w) = queue.pop_front() {
        let (sa, sb) = (w.apply_root(alpha).sign(), w.apply_root(beta).sign());
        if w_pos.is_none() && sa == RootSign::Positive && sb == RootSign::Positive {
            w_pos = Some(w.clone());
        }
        if w_neg.is_none() && sa == RootSign::Negative && sb == RootSign::Negative {
            w_neg = Some(w.clone());
        }
        if w_pos.is_some() && w_neg.is_some() {
            break;
        }
        if w.word.len() < depth && seen.len() < ROOT_CAP {
            for i in 0..s.rank() {
                let next = w.then_simple(s, i);
                if seen.insert(next.action_q.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    let (Some(w), Some(wp)) = (w_pos, w_neg) else { return Ok(PairClass::Unknown) };
    let interval = if alpha == beta {
        vec![IntervalEntry { p: 1, q: 0, root: alpha.clone() }]
    } else {
        // Every γ ∈ ℕα + ℕβ in Φ has wγ ∈ N(w′w⁻¹).
        let winv = w.inverse(s);
        let mut u_word = wp.word.clone();
        u_word.extend(winv.word.iter());
        let mut out: Vec<IntervalEntry> = inversion_set(s, &u_word)
            .into_iter()
            .map(|g| winv.apply_root(&g))
            .filter_map(|g| {
                let (p, q) = coefficients(alpha, beta, &g)?;
                (p >= 0 && q >= 0).then_some(IntervalEntry { p, q, root: g })
            })
            .collect();
        out.sort_by(|x, y| (x.p * y.q).cmp(&(y.p * x.q)));
        out
    };
    Ok(PairClass::Prenilpotent { w: w.word, w_prime: wp.word, interval })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSetReport {
    pub psi_closed: bool,
    /// (α, β, pα + qβ) witnessing non-closedness of Ψ.
    pub psi_violation: Option<(Root, Root, Root)>,
    pub psi_prime_closed: bool,
    pub psi_prime_violation: Option<(Root, Root, Root)>,
    pub is_ideal: bool,
    pub ideal_violation: Option<(Root, Root, Root)>,
}

/// First (α, β, pα+qβ) with α ∈ `left`, β ∈ `right`, p, q ≥ 1, pα+qβ ∈ Δ of height ≤ H and not
/// in `target`.
fn find_escape(
    s: &RootDatum,
    left: &[Root],
    right: &[Root],
    target: &BTreeSet<Root>,
    h: u32,
) -> Option<(Root, Root, Root)> {
    let a = s.matrix();
    for al in left {
        for be in right {
            let (ha, hb) = (al.height(), be.height());
            let mut p = 1;
            while p * ha + hb <= i64::from(h) {
                let mut q = 1;
                while p * ha + q * hb <= i64::from(h) {
                    let g = al.combo(p, be, q);
                    if classify_vector(a, &g) != VectorClass::NotRoot && !target.contains(&g) {
                        return Some((al.clone(), be.clone(), g));
                    }
                    q += 1;
                }
                p += 1;
            }
        }
    }
    None
}

/// Closedness of Ψ and Ψ′ and whether Ψ′ is an ideal of Ψ, checked on sums of height ≤ H.
pub fn closed_set_predicates(
    s: &RootDatum,
    psi: &[Root],
    psi_prime: &[Root],
    h: u32,
) -> Result<ClosedSetReport, RootDataError> {
    for g in psi.iter().chain(psi_prime) {
        if !g.is_positive() || classify_vector(s.matrix(), g) == VectorClass::NotRoot {
            return Err(RootDataError::PreconditionFailed(format!("{:?} is not in Δ⁺", g.0)));
        }
        if g.height() > i64::from(h) {
            return Err(RootDataError::HeightBoundTooSmall { bound: h, needed: g.0.clone() });
        }
    }
    let psi_set: BTreeSet<Root> = psi.iter().cloned().collect();
    let prime_set: BTreeSet<Root> = psi_prime.iter().cloned().collect();
    if !prime_set.is_subset(&psi_set) {
        return Err(RootDataError::PreconditionFailed("Ψ′ must be contained in Ψ".into()));
    }
    let psi_violation = find_escape(s, psi, psi, &psi_set, h);
    let psi_prime_violation = find_escape(s, psi_prime, psi_prime, &prime_set, h);
    let ideal_violation = find_escape(s, psi_prime, psi, &prime_set, h);
    Ok(ClosedSetReport {
        psi_closed: psi_violation.is_none(),
        psi_violation,
        psi_prime_closed: psi_prime_violation.is_none(),
        psi_prime_violation,
        is_ideal: ideal_violation.is_none(),
        ideal_violation,
    })
}
