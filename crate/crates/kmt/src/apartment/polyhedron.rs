//! Exact infima of linear forms over finite systems of (strict or weak) linear inequalities, by
//! Fourier–Motzkin elimination.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::num::Q;

/// a·y + b ≥ 0, or > 0 when `strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Ineq {
    pub a: Vec<Q>,
    pub b: Q,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Infimum {
    Empty,
    Unbounded,
    At { value: Q, attained: bool },
}

/// Scales to a leading coefficient ±1 and keeps the tightest constant per direction.
fn normalize(ineqs: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: BTreeMap<Vec<Q>, (Q, bool)> = BTreeMap::new();
    for mut e in ineqs {
        let Some(lead) = e.a.iter().find(|x| !x.is_zero()).cloned() else {
            let ok = if e.strict { e.b > Q::zero() } else { e.b >= Q::zero() };
            if !ok {
                return None;
            }
            continue;
        };
        let s = Q::one() / lead.abs();
        for x in e.a.iter_mut() {
            *x *= &s;
        }
        e.b *= &s;
        let slot = best.entry(e.a).or_insert((e.b.clone(), e.strict));
        if e.b < slot.0 || (e.b == slot.0 && e.strict) {
            *slot = (e.b, e.strict);
        }
    }
    Some(best.into_iter().map(|(a, (b, strict))| Ineq { a, b, strict }).collect())
}

fn eliminate(ineqs: Vec<Ineq>, j: usize) -> Option<Vec<Ineq>> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for e in ineqs {
        if e.a[j].is_positive() {
            pos.push(e);
        } else if e.a[j].is_negative() {
            neg.push(e);
        } else {
            out.push(e);
        }
    }
    for p in &pos {
        for n in &neg {
            let (wp, wn) = (-n.a[j].clone(), p.a[j].clone());
            let a = p.a.iter().zip(&n.a).map(|(x, y)| &wp * x + &wn * y).collect();
            out.push(Ineq { a, b: &wp * &p.b + &wn * &n.b, strict: p.strict || n.strict });
        }
    }
    normalize(out)
}

/// inf { c·y : y satisfies every inequality } and whether it is attained.
pub(crate) fn infimum(ineqs: &[Ineq], c: &[Q]) -> Infimum {
    let n = c.len();
    let Some(k) = c.iter().position(|x| !x.is_zero()) else {
        // A zero form: only feasibility matters.
        let mut sys = ineqs.to_vec();
        for j in 0..n {
            match eliminate(sys, j) {
                Some(s) => sys = s,
                None => return Infimum::Empty,
            }
        }
        return Infimum::At { value: Q::zero(), attained: true };
    };
    // Substitute y_k = (t − Σ_{j≠k} c_j y_j)/c_k; slot k then holds t.
    let ck = c[k].clone();
    let sub: Vec<Ineq> = ineqs
        .iter()
        .map(|e| {
            let f = &e.a[k] / &ck;
            let a = (0..n).map(|j| if j == k { f.clone() } else { &e.a[j] - &f * &c[j] }).collect();
            Ineq { a, b: e.b.clone(), strict: e.strict }
        })
        .collect();
    let Some(mut sys) = normalize(sub) else { return Infimum::Empty };
    for j in (0..n).filter(|&j| j != k) {
        match eliminate(sys, j) {
            Some(s) => sys = s,
            None => return Infimum::Empty,
        }
    }
    let mut lower: Option<(Q, bool)> = None;
    let mut upper: Option<(Q, bool)> = None;
    for e in &sys {
        if e.a[k].is_positive() {
            let v = -e.b.clone();
            if lower.as_ref().map_or(true, |(l, s)| v > *l || (v == *l && e.strict && !s)) {
                lower = Some((v, e.strict));
            }
        } else {
            let v = e.b.clone();
            if upper.as_ref().map_or(true, |(u, s)| v < *u || (v == *u && e.strict && !s)) {
                upper = Some((v, e.strict));
            }
        }
    }
    if let (Some((l, ls)), Some((u, us))) = (&lower, &upper) {
        if l > u || (l == u && (*ls || *us)) {
            return Infimum::Empty;
        }
    }
    match lower {
        None => Infimum::Unbounded,
        Some((value, strict)) => Infimum::At { value, attained: !strict },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    fn ineq(a: &[i64], b: i64, strict: bool) -> Ineq {
        Ineq { a: a.iter().map(|&x| q(x)).collect(), b: q(b), strict }
    }

    #[test]
    fn square_and_open_edges() {
        // 0 ≤ x ≤ 1, 0 < y ≤ 2.
        let sys = vec![ineq(&[1, 0], 0, false), ineq(&[-1, 0], 1, false), ineq(&[0, 1], 0, true), ineq(&[0, -1], 2, false)];
        assert_eq!(infimum(&sys, &[q(1), q(1)]), Infimum::At { value: q(0), attained: false });
        assert_eq!(infimum(&sys, &[q(-1), q(0)]), Infimum::At { value: q(-1), attained: true });
        assert_eq!(infimum(&sys[..2], &[q(0), q(1)]), Infimum::Unbounded);
        let mut bad = sys.clone();
        bad.push(ineq(&[-1, 0], -2, false));
        assert_eq!(infimum(&bad, &[q(1), q(0)]), Infimum::Empty);
    }
}
