//! Exact linear algebra over ℚ and ℤ: echelon forms, kernels, Hermite and Smith normal forms.
//!
//! Matrices are row vectors (`Vec<Vec<_>>`); integer lattices are spanned by rows.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::{common_denominator, qz, Q, Z};

/// Reduced row echelon form in place; zero rows are dropped. Returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of {x : A x = 0} where A has `ncols` columns.
pub fn right_nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A basis of the row space, in reduced echelon form.
pub fn row_space(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    rref(&mut m);
    m
}

/// Some `c` with `c · B = v`, if one exists.
pub fn left_solve(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let n = basis.len();
    let d = v.len();
    // Solve Bᵀ c = v via the augmented system.
    let mut aug: Vec<Vec<Q>> = (0..d)
        .map(|j| {
            let mut row: Vec<Q> = basis.iter().map(|b| b[j].clone()).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut c = vec![Q::zero(); n];
    for (row, &pc) in aug.iter().zip(&pivots) {
        c[pc] = row[n].clone();
    }
    Some(c)
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `v · M` for a row vector `v`.
pub fn vec_mat(v: &[Q], m: &[Vec<Q>]) -> Vec<Q> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = vec![Q::zero(); ncols];
    for (a, row) in v.iter().zip(m) {
        if a.is_zero() {
            continue;
        }
        for (o, b) in out.iter_mut().zip(row) {
            if !b.is_zero() {
                *o += a * b;
            }
        }
    }
    out
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter().map(|row| vec_mat(row, b)).collect()
}

/// Multiplies rational rows by a common denominator; returns the integer rows and the factor.
pub fn scale_to_integer(rows: &[Vec<Q>]) -> (Vec<Vec<Z>>, Z) {
    let d = common_denominator(rows.iter().flatten());
    let dq = qz(d.clone());
    let out = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * &dq).to_integer()).collect())
        .collect();
    (out, d)
}

pub fn to_q_rows(rows: &[Vec<Z>]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|x| qz(x.clone())).collect()).collect()
}

/// Row Hermite normal form with transform: returns `(H, U)` with `U · M = H`, `U` unimodular.
/// `H` is in echelon form with positive pivots, entries above pivots reduced into `[0, pivot)`,
/// and its zero rows placed last.
pub fn hnf_with_transform(m: &[Vec<Z>]) -> (Vec<Vec<Z>>, Vec<Vec<Z>>) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut h = m.to_vec();
    let mut u: Vec<Vec<Z>> = (0..nrows)
        .map(|i| (0..nrows).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            let best = (r..nrows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in (r + 1)..nrows {
                if h[i][c].is_zero() {
                    continue;
                }
                let f = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &f);
                row_axpy(&mut u, i, r, &f);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -x.clone();
            }
            for x in u[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let f = h[i][c].div_floor(&h[r][c]);
            if !f.is_zero() {
                row_axpy(&mut h, i, r, &f);
                row_axpy(&mut u, i, r, &f);
            }
        }
        r += 1;
    }
    (h, u)
}

/// row[i] -= f · row[j]
fn row_axpy(m: &mut [Vec<Z>], i: usize, j: usize, f: &Z) {
    let src = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        if !y.is_zero() {
            *x -= f * y;
        }
    }
}

/// Hermite normal form basis (nonzero rows) of the lattice spanned by the rows.
pub fn hnf(m: &[Vec<Z>]) -> Vec<Vec<Z>> {
    let (h, _) = hnf_with_transform(m);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// HNF basis of {z ∈ ℤ^rows : z · M = 0}.
pub fn integer_left_kernel(m: &[Vec<Z>]) -> Vec<Vec<Z>> {
    if m.is_empty() {
        return Vec::new();
    }
    let (h, u) = hnf_with_transform(m);
    let ker: Vec<Vec<Z>> = h
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(|x| x.is_zero()))
        .map(|(_, urow)| urow)
        .collect();
    if ker.is_empty() {
        ker
    } else {
        hnf(&ker)
    }
}

/// Some integer `z` with `z · M = b`, if one exists.
pub fn solve_integer_left(m: &[Vec<Z>], b: &[Z]) -> Option<Vec<Z>> {
    let nrows = m.len();
    let ncols = b.len();
    if nrows == 0 {
        return if b.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
    }
    let (h, u) = hnf_with_transform(m);
    // Solve y · H = b by forward substitution along the pivots.
    let mut y = vec![Z::zero(); nrows];
    let mut rest = b.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        if r < nrows && !h[r][c].is_zero() {
            let (qt, rem) = rest[c].div_rem(&h[r][c]);
            if !rem.is_zero() {
                return None;
            }
            for (x, hv) in rest.iter_mut().zip(&h[r]) {
                if !hv.is_zero() {
                    *x -= &qt * hv;
                }
            }
            y[r] = qt;
            r += 1;
        } else if !rest[c].is_zero() {
            return None;
        }
    }
    let mut z = vec![Z::zero(); nrows];
    for (yi, urow) in y.iter().zip(&u) {
        if yi.is_zero() {
            continue;
        }
        for (zj, uj) in z.iter_mut().zip(urow) {
            *zj += yi * uj;
        }
    }
    Some(z)
}

/// Reduces `v` modulo the lattice with HNF basis `basis` into the canonical fundamental domain
/// (pivot coordinates in `[0, pivot)`).
pub fn reduce_mod_hnf(v: &[Z], basis: &[Vec<Z>]) -> Vec<Z> {
    let mut out = v.to_vec();
    for row in basis {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else { continue };
        let f = out[c].div_floor(&row[c]);
        if !f.is_zero() {
            for (x, y) in out.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
    out
}

/// Nonzero invariant factors d₁ | d₂ | … of the Smith normal form.
pub fn smith_invariants(m: &[Vec<Z>]) -> Vec<Z> {
    let mut a = m.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Find a nonzero entry of smallest absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in (t + 1)..nrows {
            if !a[i][t].is_zero() {
                let f = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &f);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..ncols {
            if !a[t][j].is_zero() {
                let f = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = row[t].clone();
                    row[j] -= &f * v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of the remaining block by the pivot.
        let p = a[t][t].clone();
        let bad = ((t + 1)..nrows)
            .flat_map(|i| ((t + 1)..ncols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&a[i][j] % &p).is_zero());
        if let Some((i, _)) = bad {
            let src = a[i].clone();
            for (x, y) in a[t].iter_mut().zip(&src) {
                *x += y;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

pub fn int_det(m: &[Vec<Z>]) -> Z {
    det(&to_q_rows(m)).to_integer()
}
