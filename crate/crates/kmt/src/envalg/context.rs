//! Truncated integral enveloping algebras: ℤ-forms, root-space lattices, bases ℬ_α,
//! exponential sequences and PBW monomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::num::{factorial, q, qz, CoefficientRing, Q, Z};
use crate::rootdata::{classify_vector, Root, RootDatum, VectorClass};

use super::wordalg::{axpy, is_zero_vec, HVec, WordAlgebra};
use super::EnvAlgError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// 𝒰⁺, generated by the e_i.
    Positive,
    /// 𝒰⁻, generated by the f_i (a mirror of the positive side).
    Negative,
}

/// How exponential sequences of imaginary basis vectors are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpStrategy {
    /// Degree-by-degree integral lift, reduced to the HNF-minimal representative.
    Solver,
    /// Mitzman's choice in type Ã₁: ℬ_{nδ} = {h_n} and h_n^{[p]} = Λ_p(h_n, h_{2n}, …).
    MitzmanAffine,
}

/// Exponent vector over ℬ, in context order.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone)]
pub struct BasisElement {
    /// Signed weight (negative on the negative side).
    pub root: Root,
    pub real: bool,
    /// Position inside ℬ_α.
    pub slot: usize,
    /// Coordinates in the standard-word basis of the positive model.
    pub vector: Vec<Q>,
    /// x^{[n]} for n = 0..=n_max in standard-word coordinates.
    pub powers: Vec<Vec<Q>>,
}

impl BasisElement {
    pub fn height(&self) -> i64 {
        self.root.height().abs()
    }

    pub fn n_max(&self) -> u32 {
        (self.powers.len() - 1) as u32
    }
}

#[derive(Debug, Clone)]
struct Lattice {
    /// ℤ-basis of the integral form in weight ν (rows, standard-word coordinates).
    basis: Vec<Vec<Q>>,
    inv: Vec<Vec<Q>>,
}

#[derive(Debug, Clone)]
pub(crate) struct RootSpace {
    /// HNF basis of g_{αℤ} in lattice coordinates.
    pub(crate) lattice: Vec<Vec<Z>>,
    /// Integer matrix whose left kernel over ℤ is exactly g_{αℤ}.
    pub(crate) annihilator: Vec<Vec<Z>>,
}

#[derive(Debug, Clone)]
pub(crate) struct PbwSpace {
    pub(crate) monomials: Vec<Monomial>,
    pub(crate) to_word: Vec<Vec<Q>>,
    pub(crate) to_pbw: Vec<Vec<Q>>,
}

/// Report of the per-weight PBW change of basis against the divided-power ℤ-form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwCheck {
    pub weight: Vec<i64>,
    pub dim: usize,
    pub det: String,
}

#[derive(Debug)]
pub struct AlgebraContext {
    datum: RootDatum,
    h: u32,
    side: Side,
    ring: CoefficientRing,
    strategy: ExpStrategy,
    alg: WordAlgebra,
    lattices: Vec<Lattice>,
    root_spaces: HashMap<usize, RootSpace>,
    basis: Vec<BasisElement>,
    by_root: BTreeMap<Root, Vec<usize>>,
    pub(crate) pbw: Vec<PbwSpace>,
    monomial_index: HashMap<Monomial, (usize, usize)>,
    pbw_checks: Vec<PbwCheck>,
}

/// Builds the truncated algebra with the solver strategy.
pub fn build_context(
    datum: &RootDatum,
    h: u32,
    side: Side,
    ring: CoefficientRing,
) -> Result<Arc<AlgebraContext>, EnvAlgError> {
    build_context_with(datum, h, side, ring, ExpStrategy::Solver)
}

pub fn build_context_with(
    datum: &RootDatum,
    h: u32,
    side: Side,
    ring: CoefficientRing,
    strategy: ExpStrategy,
) -> Result<Arc<AlgebraContext>, EnvAlgError> {
    if h == 0 {
        return Err(EnvAlgError::InvalidInput("height bound must be ≥ 1".into()));
    }
    let alg = WordAlgebra::new(datum.matrix(), h)?;
    let lattices = (0..alg.spaces().len()).map(|id| integral_lattice(&alg, id)).collect::<Result<Vec<_>, _>>()?;
    let mut ctx = AlgebraContext {
        datum: datum.clone(),
        h,
        side,
        ring,
        strategy,
        alg,
        lattices,
        root_spaces: HashMap::new(),
        basis: Vec::new(),
        by_root: BTreeMap::new(),
        pbw: Vec::new(),
        monomial_index: HashMap::new(),
        pbw_checks: Vec::new(),
    };
    ctx.build_root_spaces();
    ctx.build_basis()?;
    ctx.build_pbw()?;
    Ok(Arc::new(ctx))
}

fn integral_lattice(alg: &WordAlgebra, id: usize) -> Result<Lattice, EnvAlgError> {
    let d = alg.space(id).dim;
    let gens = alg.divided_power_products(id);
    let (zg, den) = linalg::scale_to_integer(&gens);
    let h = linalg::hnf(&zg);
    if h.len() != d {
        return Err(EnvAlgError::NonIntegralStructure(format!(
            "divided powers do not span weight {:?}",
            alg.space(id).weight
        )));
    }
    let dq = qz(den);
    let basis: Vec<Vec<Q>> =
        h.iter().map(|r| r.iter().map(|x| qz(x.clone()) / &dq).collect()).collect();
    let inv = linalg::inverse(&basis).expect("full-rank lattice basis");
    Ok(Lattice { basis, inv })
}

/// Integer basis of span(rows) ∩ ℤ^d and a matrix K with {z ∈ ℤ^d : zK = 0} equal to it.
fn saturate(rows: &[Vec<Q>], d: usize) -> (Vec<Vec<Z>>, Vec<Vec<Z>>) {
    let ann = linalg::right_nullspace(rows, d);
    if ann.is_empty() {
        let id: Vec<Vec<Z>> =
            (0..d).map(|i| (0..d).map(|j| Z::from(i64::from(i == j))).collect()).collect();
        return (id, vec![vec![]; d]);
    }
    let scaled: Vec<Vec<Z>> =
        ann.iter().map(|v| linalg::scale_to_integer(std::slice::from_ref(v)).0.remove(0)).collect();
    let k: Vec<Vec<Z>> = (0..d).map(|row| scaled.iter().map(|a| a[row].clone()).collect()).collect();
    (linalg::integer_left_kernel(&k), k)
}

impl AlgebraContext {
    fn build_root_spaces(&mut self) {
        for id in 1..self.alg.spaces().len() {
            let lie = self.alg.lie_basis(id);
            if lie.is_empty() {
                continue;
            }
            let d = self.alg.space(id).dim;
            let coords: Vec<Vec<Q>> =
                lie.iter().map(|v| linalg::vec_mat(v, &self.lattices[id].inv)).collect();
            let (lattice, annihilator) = saturate(&coords, d);
            self.root_spaces.insert(id, RootSpace { lattice, annihilator });
        }
    }

    fn to_lattice_coords(&self, id: usize, v: &[Q]) -> Vec<Q> {
        linalg::vec_mat(v, &self.lattices[id].inv)
    }

    fn from_lattice_coords(&self, id: usize, v: &[Q]) -> Vec<Q> {
        linalg::vec_mat(v, &self.lattices[id].basis)
    }

    fn build_basis(&mut self) -> Result<(), EnvAlgError> {
        let a = self.datum.matrix().clone();
        let mut ids: Vec<usize> = self.root_spaces.keys().copied().collect();
        ids.sort_by_key(|&id| Root(self.alg.space(id).weight.clone()).order_key());
        let affine_a1 = a.entries() == [vec![2, -2], vec![-2, 2]];
        if self.strategy == ExpStrategy::MitzmanAffine && !affine_a1 {
            return Err(EnvAlgError::NotAffineContext);
        }
        let loop_h = if self.strategy == ExpStrategy::MitzmanAffine {
            super::mitzman::loop_cartan_elements(&self.alg)
        } else {
            Vec::new()
        };
        for id in ids {
            let weight = self.alg.space(id).weight.clone();
            let root = Root(weight.clone());
            let real = classify_vector(&a, &root) == VectorClass::Real;
            let vectors: Vec<Vec<Q>> = if !loop_h.is_empty() && !real {
                let n = (weight[0]) as usize;
                let hv = loop_h[n - 1].clone();
                let coords = self.to_lattice_coords(id, &hv);
                let rs = &self.root_spaces[&id];
                let zc: Vec<Z> = coords.iter().map(|x| x.to_integer()).collect();
                let generates = coords.iter().all(|x| x.is_integer())
                    && rs.lattice.len() == 1
                    && (zc == rs.lattice[0] || zc.iter().map(|x| -x).collect::<Vec<_>>() == rs.lattice[0]);
                if !generates {
                    return Err(EnvAlgError::NonIntegralStructure(format!(
                        "h_{n} does not generate the integral root space"
                    )));
                }
                vec![hv]
            } else {
                self.root_spaces[&id]
                    .lattice
                    .iter()
                    .map(|r| {
                        self.from_lattice_coords(id, &r.iter().map(|x| qz(x.clone())).collect::<Vec<_>>())
                    })
                    .collect()
            };
            let signed = match self.side {
                Side::Positive => root.clone(),
                Side::Negative => root.neg(),
            };
            let mut idxs = Vec::new();
            for (slot, v) in vectors.into_iter().enumerate() {
                idxs.push(self.basis.len());
                self.basis.push(BasisElement {
                    root: signed.clone(),
                    real,
                    slot,
                    vector: v,
                    powers: Vec::new(),
                });
            }
            self.by_root.insert(signed, idxs);
        }
        for k in 0..self.basis.len() {
            let ht = self.basis[k].height() as u32;
            let n_max = self.h / ht;
            let powers = if self.basis[k].real {
                self.real_powers(k, n_max)?
            } else if self.strategy == ExpStrategy::MitzmanAffine {
                super::mitzman::mitzman_powers(self, &loop_h, k, n_max)?
            } else {
                let wid = self.positive_id(&self.basis[k].root);
                self.solver_powers(wid, &self.basis[k].vector.clone(), n_max)?
            };
            self.basis[k].powers = powers;
        }
        Ok(())
    }

    pub(crate) fn positive_id(&self, root: &Root) -> usize {
        let w: Vec<i64> = root.0.iter().map(|c| c.abs()).collect();
        self.alg.weight_id(&w).expect("weight within bound")
    }

    fn real_powers(&self, k: usize, n_max: u32) -> Result<Vec<Vec<Q>>, EnvAlgError> {
        let x = &self.basis[k];
        let id = self.positive_id(&x.root);
        let mut out = vec![vec![Q::one()], x.vector.clone()];
        let mut cur: HVec = (id, x.vector.clone());
        for n in 2..=n_max {
            cur = self.alg.mul(&cur, &(id, x.vector.clone())).expect("within bound");
            let scaled: Vec<Q> = cur.1.iter().map(|c| c / qz(factorial(n))).collect();
            let coords = self.to_lattice_coords(cur.0, &scaled);
            if !coords.iter().all(|c| c.is_integer()) {
                return Err(EnvAlgError::NonIntegralStructure(format!(
                    "divided power {n} of a real root vector is not integral"
                )));
            }
            out.push(scaled);
        }
        Ok(out.into_iter().take(n_max as usize + 1).collect())
    }

    /// Group-like completion of x degree by degree, choosing the HNF-minimal integral lift.
    pub(crate) fn solver_powers(
        &self,
        id: usize,
        x: &[Q],
        n_max: u32,
    ) -> Result<Vec<Vec<Q>>, EnvAlgError> {
        let alpha = self.alg.space(id).weight.clone();
        let wid = |n: usize| -> usize {
            let w: Vec<i64> = alpha.iter().map(|c| c * n as i64).collect();
            self.alg.weight_id(&w).expect("within bound")
        };
        let mut ys: Vec<Vec<Q>> = vec![vec![Q::one()], x.to_vec()];
        for n in 2..=(n_max as usize) {
            let series: Vec<HVec> = (0..n).map(|k| (wid(k), ys[k].clone())).collect();
            let y0 = self.exp_log_coefficient(&series, n, &wid);
            let target = wid(n);
            let coords = self.to_lattice_coords(target, &y0);
            let lifted: Vec<Q> = match self.root_spaces.get(&target) {
                None => {
                    if !coords.iter().all(|c| c.is_integer()) {
                        return Err(EnvAlgError::NoIntegralSolution(n as u32));
                    }
                    coords
                }
                Some(rs) => {
                    let k = &rs.annihilator;
                    let b: Vec<Q> = (0..k[0].len())
                        .map(|c| coords.iter().zip(k).map(|(y, row)| y * qz(row[c].clone())).sum())
                        .collect();
                    if !b.iter().all(|c| c.is_integer()) {
                        return Err(EnvAlgError::NoIntegralSolution(n as u32));
                    }
                    let bz: Vec<Z> = b.iter().map(|c| c.to_integer()).collect();
                    let z = linalg::solve_integer_left(k, &bz)
                        .ok_or(EnvAlgError::NoIntegralSolution(n as u32))?;
                    linalg::reduce_mod_hnf(&z, &rs.lattice).into_iter().map(qz).collect()
                }
            };
            ys.push(self.from_lattice_coords(target, &lifted));
        }
        ys.truncate(n_max as usize + 1);
        Ok(ys)
    }

    /// [λ^n] exp(log(Σ_{k<n} y_k λ^k)) for a series with y_0 = 1.
    fn exp_log_coefficient(&self, ys: &[HVec], n: usize, wid: &dyn Fn(usize) -> usize) -> Vec<Q> {
        let zero_series = |len: usize| -> Vec<HVec> {
            (0..len).map(|k| self.alg.zero_at(wid(k))).collect()
        };
        let mul = |a: &[HVec], b: &[HVec], len: usize| -> Vec<HVec> {
            let mut out = zero_series(len);
            for (i, x) in a.iter().enumerate() {
                if is_zero_vec(&x.1) {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if i + j >= len || is_zero_vec(&y.1) {
                        continue;
                    }
                    let p = self.alg.mul(x, y).expect("within bound");
                    axpy(&mut out[i + j].1, &Q::one(), &p.1);
                }
            }
            out
        };
        // Y = series − 1, degrees 1..n−1.
        let mut y = ys.to_vec();
        y[0] = self.alg.zero_at(wid(0));
        let mut log = zero_series(n);
        let mut pow = y.clone();
        for m in 1..n {
            let c = if m % 2 == 1 { q(1) } else { q(-1) } / q(m as i64);
            for k in 0..n {
                axpy(&mut log[k].1, &c, &pow[k].1);
            }
            pow = mul(&pow, &y, n);
        }
        // exp(log) at degree n.
        let len = n + 1;
        let mut l = log.clone();
        l.push(self.alg.zero_at(wid(n)));
        let mut acc = self.alg.zero_at(wid(n)).1;
        let mut pow = l.clone();
        for m in 1..=n {
            let c = Q::one() / qz(factorial(m as u32));
            axpy(&mut acc, &c, &pow[n].1);
            pow = mul(&pow, &l, len);
        }
        acc
    }

    fn build_pbw(&mut self) -> Result<(), EnvAlgError> {
        let nb = self.basis.len();
        for id in 0..self.alg.spaces().len() {
            let weight = self.alg.space(id).weight.clone();
            let mut monomials = Vec::new();
            let mut cur = vec![0u32; nb];
            self.enumerate_monomials(&weight, 0, &mut cur, &mut monomials);
            let d = self.alg.space(id).dim;
            if monomials.len() != d {
                return Err(EnvAlgError::NonIntegralStructure(format!(
                    "weight {weight:?}: {} PBW monomials for dimension {d}",
                    monomials.len()
                )));
            }
            let to_word: Vec<Vec<Q>> = monomials.iter().map(|m| self.monomial_vector(m).1).collect();
            let in_lattice: Vec<Vec<Q>> =
                to_word.iter().map(|v| self.to_lattice_coords(id, v)).collect();
            let det = linalg::det(&in_lattice);
            let integral = in_lattice.iter().flatten().all(|c| c.is_integer());
            if !integral || det.abs() != Q::one() {
                return Err(EnvAlgError::NonIntegralStructure(format!(
                    "PBW monomials in weight {weight:?} are not a ℤ-basis (det {det})"
                )));
            }
            self.pbw_checks.push(PbwCheck {
                weight: self.sign_weight(&weight),
                dim: d,
                det: crate::num::fmt_q(&det),
            });
            let to_pbw = linalg::inverse(&to_word).expect("PBW monomials are independent");
            for (pos, m) in monomials.iter().enumerate() {
                self.monomial_index.insert(m.clone(), (id, pos));
            }
            self.pbw.push(PbwSpace { monomials, to_word, to_pbw });
        }
        Ok(())
    }

    fn sign_weight(&self, w: &[i64]) -> Vec<i64> {
        match self.side {
            Side::Positive => w.to_vec(),
            Side::Negative => w.iter().map(|c| -c).collect(),
        }
    }

    fn enumerate_monomials(&self, left: &[i64], k: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if left.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        if k == self.basis.len() {
            return;
        }
        let w: Vec<i64> = self.basis[k].root.0.iter().map(|c| c.abs()).collect();
        let mut n = 0u32;
        let mut rest = left.to_vec();
        loop {
            cur[k] = n;
            self.enumerate_monomials(&rest, k + 1, cur, out);
            for (r, c) in rest.iter_mut().zip(&w) {
                *r -= c;
            }
            n += 1;
            if rest.iter().any(|&c| c < 0) || n > self.basis[k].n_max() {
                break;
            }
        }
        cur[k] = 0;
    }

    /// [N] in standard-word coordinates.
    pub(crate) fn monomial_vector(&self, m: &[u32]) -> HVec {
        let mut acc = self.alg.one();
        for (k, &n) in m.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let x = &self.basis[k];
            let w: Vec<i64> = x.root.0.iter().map(|c| c.abs() * i64::from(n)).collect();
            let id = self.alg.weight_id(&w).expect("within bound");
            acc = self.alg.mul(&acc, &(id, x.powers[n as usize].clone())).expect("within bound");
        }
        acc
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn height_bound(&self) -> u32 {
        self.h
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn strategy(&self) -> ExpStrategy {
        self.strategy
    }

    pub fn word_algebra(&self) -> &WordAlgebra {
        &self.alg
    }

    /// ℬ in context order.
    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    /// Indices into ℬ of ℬ_α.
    pub fn basis_of(&self, alpha: &Root) -> &[usize] {
        self.by_root.get(alpha).map_or(&[], Vec::as_slice)
    }

    /// Roots α with ℬ_α nonempty, in context order.
    pub fn roots(&self) -> Vec<Root> {
        let mut out: Vec<Root> = Vec::new();
        for b in &self.basis {
            if out.last() != Some(&b.root) {
                out.push(b.root.clone());
            }
        }
        out
    }

    pub fn pbw_checks(&self) -> &[PbwCheck] {
        &self.pbw_checks
    }

    /// Weight and position of a monomial in its graded piece.
    pub fn locate(&self, m: &[u32]) -> Option<(usize, usize)> {
        self.monomial_index.get(m).copied()
    }

    /// Signed weight of a monomial.
    pub fn monomial_weight(&self, m: &[u32]) -> Root {
        let r = self.datum.rank();
        let mut w = vec![0i64; r];
        for (k, &n) in m.iter().enumerate() {
            for (o, c) in w.iter_mut().zip(&self.basis[k].root.0) {
                *o += c * i64::from(n);
            }
        }
        Root(w)
    }

    pub fn monomials_of_weight(&self, id: usize) -> &[Monomial] {
        &self.pbw[id].monomials
    }

    pub fn unit_monomial(&self, k: usize) -> Monomial {
        let mut m = vec![0; self.basis.len()];
        m[k] = 1;
        m
    }

    /// The monomial at (weight id, position) in standard-word coordinates.
    pub fn word_combination(&self, id: usize, pos: usize) -> &[Q] {
        &self.pbw[id].to_word[pos]
    }

    /// PBW coordinates of a standard-word vector.
    pub(crate) fn word_to_pbw(&self, v: &HVec) -> Vec<Q> {
        linalg::vec_mat(&v.1, &self.pbw[v.0].to_pbw)
    }

    /// Whether a homogeneous vector lies in the divided-power ℤ-form.
    pub fn is_integral(&self, v: &HVec) -> bool {
        self.to_lattice_coords(v.0, &v.1).iter().all(|c| c.is_integer())
    }

    /// Basis of g_{αℤ} in standard-word coordinates (rows).
    pub fn integral_root_space(&self, alpha: &Root) -> Vec<Vec<Q>> {
        let id = match self.alg.weight_id(&alpha.0.iter().map(|c| c.abs()).collect::<Vec<_>>()) {
            Some(id) => id,
            None => return Vec::new(),
        };
        self.root_spaces.get(&id).map_or_else(Vec::new, |rs| {
            rs.lattice
                .iter()
                .map(|r| self.from_lattice_coords(id, &r.iter().map(|x| qz(x.clone())).collect::<Vec<_>>()))
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{simply_connected_datum, standard};

    #[test]
    fn sl2_divided_powers() {
        let s = simply_connected_datum(&standard::a1());
        let ctx = build_context(&s, 3, Side::Positive, CoefficientRing::Integers).unwrap();
        assert_eq!(ctx.basis().len(), 1);
        assert_eq!(ctx.pbw_checks().len(), 4);
    }

    #[test]
    fn a2_basis() {
        let s = simply_connected_datum(&standard::a2());
        let ctx = build_context(&s, 3, Side::Positive, CoefficientRing::Integers).unwrap();
        assert_eq!(ctx.basis().len(), 3);
        assert_eq!(ctx.basis_of(&Root(vec![1, 1])).len(), 1);
    }

    #[test]
    fn affine_pbw_is_unimodular() {
        let s = simply_connected_datum(&standard::a1_affine());
        for strategy in [ExpStrategy::Solver, ExpStrategy::MitzmanAffine] {
            let ctx =
                build_context_with(&s, 5, Side::Positive, CoefficientRing::Integers, strategy).unwrap();
            assert!(ctx.pbw_checks().iter().all(|c| c.det == "1" || c.det == "-1"));
        }
    }
}
