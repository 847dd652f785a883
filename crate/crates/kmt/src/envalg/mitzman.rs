//! Mitzman polynomials Λ_n and the affine Ã₁ choice of exponential sequences.

use num_traits::One;

use crate::num::{q, Q};
use crate::poly::Poly;

use super::context::AlgebraContext;
use super::wordalg::{axpy, HVec, WordAlgebra};
use super::EnvAlgError;

/// Λ_0, …, Λ_n in the indeterminates Z_1, …, Z_n (variable j−1 is Z_j), by the recurrence
/// nΛ_n = Σ_{p=1}^{n} Z_p Λ_{n−p}.
pub fn mitzman_sequence(n: usize) -> Vec<Poly> {
    let nvars = n.max(1);
    let mut out = vec![Poly::one(nvars)];
    for k in 1..=n {
        let mut acc = Poly::zero(nvars);
        for p in 1..=k {
            acc = &acc + &(&Poly::var(nvars, p - 1) * &out[k - p]);
        }
        out.push(acc.scale(&(Q::one() / q(k as i64))));
    }
    out
}

/// Λ_n as a polynomial in Z_1, …, Z_n.
pub fn mitzman_lambda(n: usize) -> Poly {
    mitzman_sequence(n).pop().expect("nonempty")
}

/// Λ_n(values) for polynomial values of Z_1, …, Z_n (all in a common ring).
pub fn mitzman_specialize(n: usize, values: &[Poly]) -> Poly {
    let lam = mitzman_lambda(n);
    let nv = values.first().map_or(1, Poly::nvars);
    let mut vals: Vec<Poly> = values.to_vec();
    while vals.len() < lam.nvars() {
        vals.push(Poly::zero(nv));
    }
    lam.compose(&vals[..lam.nvars()])
}

fn bracket(alg: &WordAlgebra, x: &HVec, y: &HVec) -> HVec {
    let a = alg.mul(x, y).expect("within bound");
    let b = alg.mul(y, x).expect("within bound");
    (a.0, a.1.iter().zip(&b.1).map(|(p, q)| p - q).collect())
}

/// h_1, …, h_{⌊H/2⌋} in 𝒰⁺ of Ã₁, through the loop realization e_1 = E12, e_0 = t·E21:
/// h_1 = [e_1, e_0], F_1 = e_0, F_{k+1} = −½[h_k, e_0], h_{k+1} = [e_1, F_{k+1}].
pub fn loop_cartan_elements(alg: &WordAlgebra) -> Vec<Vec<Q>> {
    let n = alg.height_bound() / 2;
    let e0 = alg.generator(0);
    let e1 = alg.generator(1);
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut h = bracket(alg, &e1, &e0);
    out.push(h.1.clone());
    for _ in 1..n {
        let f = bracket(alg, &h, &e0);
        let f = (f.0, f.1.into_iter().map(|x| x * crate::num::qr(-1, 2)).collect());
        h = bracket(alg, &e1, &f);
        out.push(h.1.clone());
    }
    out
}

/// h_n^{[p]} = Λ_p(h_n, h_{2n}, …) through p·y_p = Σ_{k=1}^{p} h_{kn} y_{p−k}.
pub(crate) fn mitzman_powers(
    ctx: &AlgebraContext,
    loop_h: &[Vec<Q>],
    k: usize,
    n_max: u32,
) -> Result<Vec<Vec<Q>>, EnvAlgError> {
    let alg = ctx.word_algebra();
    let base = &ctx.basis()[k];
    let n = base.root.0[0].unsigned_abs() as usize;
    let id_of = |m: usize| -> usize {
        alg.weight_id(&[(m * n) as i64, (m * n) as i64]).expect("within bound")
    };
    let mut ys: Vec<HVec> = vec![alg.one()];
    for p in 1..=(n_max as usize) {
        let target = id_of(p);
        let mut acc = alg.zero_at(target).1;
        for j in 1..=p {
            let hj = (id_of(j), loop_h[j * n - 1].clone());
            let prod = alg.mul(&hj, &ys[p - j]).expect("within bound");
            axpy(&mut acc, &Q::one(), &prod.1);
        }
        let inv = Q::one() / q(p as i64);
        let y = (target, acc.into_iter().map(|x| x * &inv).collect::<Vec<_>>());
        if !ctx.is_integral(&y) {
            return Err(EnvAlgError::NonIntegralStructure(format!(
                "Mitzman power h_{n}^[{p}] is not integral"
            )));
        }
        ys.push(y);
    }
    Ok(ys.into_iter().map(|v| v.1).collect())
}

/// Whether two polynomials agree; used by the symbolic identity checks.
pub fn poly_eq(a: &Poly, b: &Poly) -> bool {
    (a - b).is_zero()
}

/// Λ_n(Z + Z′) − Σ_{p+q=n} Λ_p(Z)Λ_q(Z′) in 2n variables (Z in 0..n, Z′ in n..2n).
pub fn convolution_defect(n: usize) -> Poly {
    let nv = 2 * n.max(1);
    let z = |j: usize| Poly::var(nv, j);
    let zp = |j: usize| Poly::var(nv, n.max(1) + j);
    let sums: Vec<Poly> = (0..n.max(1)).map(|j| &z(j) + &zp(j)).collect();
    let lhs = mitzman_specialize(n, &sums);
    let mut rhs = Poly::zero(nv);
    for p in 0..=n {
        let lz = mitzman_specialize(p, &(0..n.max(1)).map(z).collect::<Vec<_>>());
        let lzp = mitzman_specialize(n - p, &(0..n.max(1)).map(zp).collect::<Vec<_>>());
        rhs = &rhs + &(&lz * &lzp);
    }
    let d = &lhs - &rhs;
    if d.is_zero() {
        Poly::zero(nv)
    } else {
        d
    }
}

/// Per-n verdicts of the Mitzman identities.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MitzmanRow {
    pub n: usize,
    /// Λ_n is homogeneous of weight n when Z_j has weight j.
    pub weighted_homogeneous: bool,
    /// Z_i = 0 for i ≥ 2 gives Z_1^(n).
    pub divided_power: bool,
    /// Z_i = Z^i gives Z^n.
    pub power: bool,
    /// Z_i = t^i Z gives t^n·binom(Z+n−1, n).
    pub geometric: bool,
    /// Λ_n(Z + Z′) = Σ_{p+q=n} Λ_p(Z)Λ_q(Z′).
    pub convolution: bool,
}

impl MitzmanRow {
    pub fn all(&self) -> bool {
        self.weighted_homogeneous && self.divided_power && self.power && self.geometric && self.convolution
    }
}

/// Checks the specializations and the convolution identity for Λ_0, …, Λ_{n_max}.
pub fn mitzman_suite(n_max: usize) -> Vec<MitzmanRow> {
    let seq = mitzman_sequence(n_max);
    // Two variables: Z = 0, t = 1.
    let zv = Poly::var(2, 0);
    let tv = Poly::var(2, 1);
    (0..=n_max)
        .map(|n| {
            let lam = &seq[n];
            let k = lam.nvars();
            let w: Vec<u32> = (1..=k as u32).collect();
            let weighted_homogeneous = lam.weights(&w) == vec![n as u32];
            let spec = |vals: Vec<Poly>| lam.compose(&vals);
            let fact = Q::one() / crate::num::qz(crate::num::factorial(n as u32));
            let divided = spec((0..k).map(|i| if i == 0 { zv.clone() } else { Poly::zero(2) }).collect());
            let divided_power = poly_eq(&divided, &zv.pow(n as u32).scale(&fact));
            let power = poly_eq(&spec((0..k).map(|i| zv.pow(i as u32 + 1)).collect()), &zv.pow(n as u32));
            let mut rising = Poly::one(2);
            for j in 0..n {
                rising = &rising * &(&zv + &Poly::constant(2, q(j as i64)));
            }
            let expected = &tv.pow(n as u32) * &rising.scale(&fact);
            let geometric = poly_eq(&spec((0..k).map(|i| &tv.pow(i as u32 + 1) * &zv).collect()), &expected);
            MitzmanRow {
                n,
                weighted_homogeneous,
                divided_power,
                power,
                geometric,
                convolution: convolution_defect(n).is_zero(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qr;

    #[test]
    fn small_lambdas() {
        let l2 = mitzman_lambda(2);
        assert_eq!(l2.coeff(&[2, 0]), qr(1, 2));
        assert_eq!(l2.coeff(&[0, 1]), qr(1, 2));
        let l3 = mitzman_lambda(3);
        assert_eq!(l3.coeff(&[3, 0, 0]), qr(1, 6));
        assert_eq!(l3.coeff(&[1, 1, 0]), qr(1, 2));
        assert_eq!(l3.coeff(&[0, 0, 1]), qr(1, 3));
        assert!(mitzman_lambda(0).coeff(&[0]).is_one());
    }

    #[test]
    fn convolution_small() {
        for n in 0..=4 {
            assert!(convolution_defect(n).is_zero());
        }
    }
}
