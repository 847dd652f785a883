use std::sync::Arc;

use kmt::envalg::{
    build_context, build_context_with, commutator_constants, divided_power_defect_ok, exponential_sequence,
    is_group_like, primitive_space, twisted_exp_basis, AlgebraContext, AlgebraElement, ExpStrategy,
    SequenceStrategy, Side, TensorElement,
};
use kmt::num::{binom, q, qr, qz, CoefficientRing, Q};
use kmt::rootdata::{simply_connected_datum, standard, validate_matrix, KacMoodyMatrix, Root};
use num_traits::{One, Zero};

fn ctx(a: &KacMoodyMatrix, h: u32) -> Arc<AlgebraContext> {
    build_context(&simply_connected_datum(a), h, Side::Positive, CoefficientRing::Integers).unwrap()
}

fn tensor_mul(a: &TensorElement, b: &TensorElement, ctx: &Arc<AlgebraContext>) -> TensorElement {
    let mut out = TensorElement::new();
    for ((a1, a2), ca) in a {
        for ((b1, b2), cb) in b {
            let l = AlgebraElement::monomial(ctx, a1.clone(), Q::one())
                .mul(&AlgebraElement::monomial(ctx, b1.clone(), Q::one()))
                .unwrap();
            let r = AlgebraElement::monomial(ctx, a2.clone(), Q::one())
                .mul(&AlgebraElement::monomial(ctx, b2.clone(), Q::one()))
                .unwrap();
            for (m1, c1) in l.terms() {
                for (m2, c2) in r.terms() {
                    *out.entry((m1.clone(), m2.clone())).or_insert_with(Q::zero) += ca * cb * c1 * c2;
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[test]
fn sl2_divided_power_products() {
    let c = ctx(&standard::a1(), 6);
    for n in 0..=3u32 {
        for m in 0..=3u32 {
            let p = AlgebraElement::basis_power(&c, 0, n).mul(&AlgebraElement::basis_power(&c, 0, m)).unwrap();
            let expect = AlgebraElement::basis_power(&c, 0, n + m).scale(&qz(binom(i64::from(n + m), n)));
            assert_eq!(p, expect);
        }
    }
    let one = AlgebraElement::one(&c);
    let e = AlgebraElement::basis_vector(&c, 0);
    assert_eq!(one.mul(&e).unwrap(), e);
}

#[test]
fn a2_bracket_is_basis_vector() {
    let c = ctx(&standard::a2(), 2);
    let k1 = c.basis_of(&Root(vec![1, 0]))[0];
    let k2 = c.basis_of(&Root(vec![0, 1]))[0];
    let k12 = c.basis_of(&Root(vec![1, 1]))[0];
    let e1 = AlgebraElement::basis_vector(&c, k1);
    let e2 = AlgebraElement::basis_vector(&c, k2);
    let br = e1.mul(&e2).unwrap().sub(&e2.mul(&e1).unwrap()).unwrap();
    let x = AlgebraElement::basis_vector(&c, k12);
    assert!(br == x || br == x.neg(), "{br}");
}

#[test]
fn bialgebra_maps() {
    let c = ctx(&standard::a1_affine(), 4);
    let e = AlgebraElement::basis_vector(&c, 0);
    let cop = e.coproduct();
    let one = AlgebraElement::one(&c);
    let mut expect = e.tensor(&one);
    expect.extend(one.tensor(&e));
    assert_eq!(cop, expect);
    assert!(e.counit().is_zero());
    let monos: Vec<_> = (0..c.word_algebra().spaces().len())
        .flat_map(|id| c.monomials_of_weight(id).to_vec())
        .collect();
    for m in &monos {
        let x = AlgebraElement::monomial(&c, m.clone(), Q::one());
        assert_eq!(x.antipode().unwrap().antipode().unwrap(), x);
        if m.iter().any(|&n| n > 0) {
            assert!(x.counit().is_zero());
        }
    }
    for a in monos.iter().take(8) {
        for b in monos.iter().take(8) {
            let x = AlgebraElement::monomial(&c, a.clone(), Q::one());
            let y = AlgebraElement::monomial(&c, b.clone(), Q::one());
            let xy = x.mul(&y).unwrap();
            assert_eq!(xy.antipode().unwrap(), y.antipode().unwrap().mul(&x.antipode().unwrap()).unwrap());
            let lhs = kmt::envalg::tensor_within(&c, &xy.coproduct());
            let rhs = kmt::envalg::tensor_within(&c, &tensor_mul(&x.coproduct(), &y.coproduct(), &c));
            assert_eq!(lhs, rhs, "∇ multiplicative on {a:?}·{b:?}");
        }
    }
}

#[test]
fn twisted_exponentials_are_group_like() {
    for strategy in [ExpStrategy::Solver, ExpStrategy::MitzmanAffine] {
        let s = simply_connected_datum(&standard::a1_affine());
        let c = build_context_with(&s, 6, Side::Positive, CoefficientRing::Rationals, strategy).unwrap();
        for k in 0..c.basis().len() {
            for lam in [q(1), q(-2), qr(1, 3)] {
                let u = twisted_exp_basis(&c, k, &lam);
                assert!(is_group_like(&u), "basis {k}");
                let inv = u.antipode().unwrap();
                assert_eq!(u.mul(&inv).unwrap(), AlgebraElement::one(&c));
            }
        }
    }
}

#[test]
fn exponential_sequences() {
    let s = simply_connected_datum(&standard::a1_affine());
    let c = build_context_with(&s, 6, Side::Positive, CoefficientRing::Integers, ExpStrategy::MitzmanAffine)
        .unwrap();
    let kd = c.basis_of(&Root(vec![1, 1]))[0];
    let x = AlgebraElement::basis_vector(&c, kd);
    let seq = exponential_sequence(&c, &x, 3, SequenceStrategy::MitzmanAffine).unwrap();
    for n in 0..=3 {
        assert_eq!(seq.terms[n], AlgebraElement::basis_power(&c, kd, n as u32));
    }
    let solved = exponential_sequence(&c, &x, 3, SequenceStrategy::Solver).unwrap();
    assert!(is_group_like(&solved.twisted_exp(&q(1)).unwrap()));
    assert!(divided_power_defect_ok(&solved).unwrap());
    let zero = exponential_sequence(&c, &AlgebraElement::zero(&c), 3, SequenceStrategy::Solver).unwrap();
    assert_eq!(zero.terms[0], AlgebraElement::one(&c));
    assert!(zero.terms[1..].iter().all(AlgebraElement::is_zero));
    let k1 = c.basis_of(&Root(vec![0, 1]))[0];
    let e = AlgebraElement::basis_vector(&c, k1);
    let real = exponential_sequence(&c, &e, 3, SequenceStrategy::Real).unwrap();
    assert_eq!(real.terms[3], AlgebraElement::basis_power(&c, k1, 3));
    let mixed = e.add(&x).unwrap();
    assert!(exponential_sequence(&c, &mixed, 2, SequenceStrategy::Solver).is_err());
}

#[test]
fn primitive_spaces() {
    let c = ctx(&standard::a1_affine(), 4);
    assert_eq!(primitive_space(&c, &Root(vec![1, 1])).unwrap().lattice.len(), 1);
    assert_eq!(primitive_space(&c, &Root(vec![1, 0])).unwrap().dim(), 1);
    let h = ctx(&standard::hyperbolic(3), 3);
    let p = primitive_space(&h, &Root(vec![2, 1])).unwrap();
    assert_eq!(p.dim(), 1);
    // ad(e^{(2)}) f up to sign: (e²f − 2efe + fe²)/2.
    let e = AlgebraElement::basis_vector(&h, h.basis_of(&Root(vec![1, 0]))[0]);
    let f = AlgebraElement::basis_vector(&h, h.basis_of(&Root(vec![0, 1]))[0]);
    let ee = e.mul(&e).unwrap();
    let ad = ee.mul(&f).unwrap().sub(&e.mul(&f).unwrap().mul(&e).unwrap().scale(&q(2))).unwrap();
    let ad = ad.add(&f.mul(&ee).unwrap()).unwrap().scale(&qr(1, 2));
    assert!(p.lattice[0] == ad || p.lattice[0] == ad.neg());
}

type Mat = Vec<Vec<Q>>;

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = vec![vec![Q::zero(); n]; n];
    m[i][j] = Q::one();
    m
}

fn madd(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

fn mscale(a: &Mat, c: &Q) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn mexp(x: &Mat) -> Mat {
    let n = x.len();
    let mut acc: Mat = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    let mut pow = acc.clone();
    for k in 1..=n {
        pow = mscale(&kmt::linalg::mat_mul(&pow, x), &(Q::one() / q(k as i64)));
        acc = madd(&acc, &pow);
    }
    acc
}

/// Image of a context basis vector in a representation given by the e_i.
fn represent(c: &AlgebraContext, k: usize, gens: &[Mat]) -> Mat {
    let b = &c.basis()[k];
    let alg = c.word_algebra();
    let id = alg.weight_id(&b.root.0).unwrap();
    let n = gens[0].len();
    let mut acc = vec![vec![Q::zero(); n]; n];
    for (coef, word) in b.vector.iter().zip(&alg.space(id).words) {
        let mut m = mexp(&vec![vec![Q::zero(); n]; n]);
        for &i in word {
            m = kmt::linalg::mat_mul(&m, &gens[i]);
        }
        acc = madd(&acc, &mscale(&m, coef));
    }
    acc
}

fn check_against_matrices(a: &KacMoodyMatrix, h: u32, gens: &[Mat]) -> Vec<i64> {
    let c = ctx(a, h);
    let table = commutator_constants(&c, &Root(vec![1, 0]), &Root(vec![0, 1])).unwrap();
    for (r, rp) in [(q(1), q(1)), (q(3), q(-2))] {
        let x = |m: &Mat, t: &Q| mexp(&mscale(m, t));
        let lhs = [x(&gens[0], &r), x(&gens[1], &rp), x(&gens[0], &-r.clone()), x(&gens[1], &-rp.clone())]
            .iter()
            .fold(mexp(&mscale(&gens[0], &Q::zero())), |acc, m| kmt::linalg::mat_mul(&acc, m));
        let mut rhs = mexp(&mscale(&gens[0], &Q::zero()));
        for e in &table {
            let k = c.basis_of(&Root(e.gamma.clone()))[0];
            let t = q(e.c) * num_traits::pow(r.clone(), e.p as usize) * num_traits::pow(rp.clone(), e.q as usize);
            rhs = kmt::linalg::mat_mul(&rhs, &x(&represent(&c, k, gens), &t));
        }
        assert_eq!(lhs, rhs);
    }
    table.iter().map(|e| e.c).collect()
}

#[test]
fn commutator_sl3_oracle() {
    let gens = vec![unit(3, 0, 1), unit(3, 1, 2)];
    let cs = check_against_matrices(&standard::a2(), 2, &gens);
    assert_eq!(cs.len(), 1);
    assert_eq!(cs[0].abs(), 1);
}

#[test]
fn commutator_sp4_oracle() {
    // Short e_0 = E12 + E34 and long e_1 = E23 in the 4-dimensional representation.
    let gens = vec![madd(&unit(4, 0, 1), &unit(4, 2, 3)), unit(4, 1, 2)];
    let cs = check_against_matrices(&standard::b2(), 3, &gens);
    assert_eq!(cs.len(), 2);
    assert!(cs.iter().all(|c| c.abs() == 1 || c.abs() == 2), "{cs:?}");
}

#[test]
fn commuting_pair_has_empty_table() {
    let a = validate_matrix(&[vec![2, 0], vec![0, 2]]).unwrap();
    let c = ctx(&a, 2);
    assert!(commutator_constants(&c, &Root(vec![1, 0]), &Root(vec![0, 1])).unwrap().is_empty());
}

#[test]
fn not_prenilpotent_pair() {
    let c = ctx(&standard::a1_affine(), 3);
    assert!(commutator_constants(&c, &Root(vec![1, 0]), &Root(vec![0, 1])).is_err());
}

#[test]
fn reduction_mod_two() {
    let s = simply_connected_datum(&standard::hyperbolic(3));
    let z = build_context(&s, 3, Side::Positive, CoefficientRing::Integers).unwrap();
    let f2 = build_context(&s, 3, Side::Positive, CoefficientRing::prime_field(2).unwrap()).unwrap();
    let e = AlgebraElement::basis_vector(&z, 0);
    let e3 = e.pow(3).unwrap();
    let r = e3.reduce_into(&f2).unwrap();
    assert!(r.is_zero(), "e³ = 6·e^(3) vanishes mod 2");
}
