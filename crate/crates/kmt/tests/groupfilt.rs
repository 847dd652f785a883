use std::sync::Arc;
use std::time::Instant;

use kmt::apartment::{Apartment, Filter};
use kmt::envalg::{build_context, AlgebraContext, AlgebraElement, Side};
use kmt::groupfilt::*;
use kmt::num::{q, qr, CoefficientRing, ValuedFieldModel, Q};
use kmt::rootdata::{simply_connected_datum, standard, KacMoodyMatrix, Root};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx(a: &KacMoodyMatrix, h: u32) -> Arc<AlgebraContext> {
    build_context(&simply_connected_datum(a), h, Side::Positive, CoefficientRing::Rationals).unwrap()
}

fn rand_lambda(rng: &mut ChaCha8Rng) -> Q {
    if rng.gen_bool(0.25) {
        Q::zero()
    } else {
        qr(rng.gen_range(-5..=5), rng.gen_range(1..=3))
    }
}

fn random_form(c: &Arc<AlgebraContext>, rng: &mut ChaCha8Rng) -> FactoredForm {
    let lambdas: Vec<Q> = (0..c.basis().len()).map(|_| rand_lambda(rng)).collect();
    FactoredForm::from_coefficients(c, &lambdas)
}

fn random_element(c: &Arc<AlgebraContext>, rng: &mut ChaCha8Rng, factors: usize) -> GroupLikeElement {
    let mut g = GroupLikeElement::one(c);
    for _ in 0..factors {
        let k = rng.gen_range(0..c.basis().len());
        g = g.mul(&GroupLikeElement::exp_basis(c, k, &rand_lambda(rng))).unwrap();
    }
    g
}

#[test]
fn density_counterexample_over_f2() {
    let start = Instant::now();
    let r = density_counterexample(3).unwrap();
    assert!(start.elapsed().as_secs_f64() < 5.0);
    assert_eq!(r.complement_dim, 10);
    assert!(r.listed_basis_ok);
    assert_eq!(r.quotient_order, 16);
    assert_eq!(r.word_group_order, 8);
    assert!(r.square_identity && r.fourth_power_is_one && r.missing_exp_e2f);
    let r4 = density_counterexample(4).unwrap();
    assert!(r4.word_group_order < r4.quotient_order);
    assert!(r4.missing_exp_e2f);
    assert!(density_counterexample(2).is_err());
}

#[test]
fn single_factor() {
    let c = ctx(&standard::a1_affine(), 4);
    let u = GroupLikeElement::exp_basis(&c, 1, &qr(2, 3));
    let f = factorize(&u, None).unwrap();
    assert_eq!(f.factors.len(), 1);
    assert_eq!(f.factors[0].basis_index, 1);
    assert_eq!(f.factors[0].lambda, qr(2, 3));
    assert!(factorize(&GroupLikeElement::one(&c), None).unwrap().factors.is_empty());
}

#[test]
fn a2_reordering_produces_the_commutator_factor() {
    let c = ctx(&standard::a2(), 3);
    let i1 = c.basis_of(&Root(vec![1, 0]))[0];
    let i2 = c.basis_of(&Root(vec![0, 1]))[0];
    let i12 = c.basis_of(&Root(vec![1, 1]))[0];
    // Context order puts α₂ before α₁, so [exp]a·e₁ · [exp]b·e₂ has to be reordered.
    assert!(i2 < i1 && i1 < i12);
    let (a, b) = (q(3), qr(-2, 5));
    let u = GroupLikeElement::exp_basis(&c, i1, &a).mul(&GroupLikeElement::exp_basis(&c, i2, &b)).unwrap();
    let f = factorize(&u, None).unwrap();
    let idx: Vec<usize> = f.factors.iter().map(|x| x.basis_index).collect();
    assert_eq!(idx, vec![i2, i1, i12]);
    assert_eq!(f.coefficient(i2), b);
    assert_eq!(f.coefficient(i1), a);
    // 3×3 oracle: (1 + aE₁₂)(1 + bE₂₃) = (1 + bE₂₃)(1 + aE₁₂)(1 + abE₁₃).
    assert_eq!(f.coefficient(i12).abs(), (&a * &b).abs());
}

#[test]
fn factorization_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (a, h) in [(standard::a1_affine(), 6), (standard::a2(), 4), (standard::hyperbolic(3), 4)] {
        let c = ctx(&a, h);
        for _ in 0..200 {
            let form = random_form(&c, &mut rng);
            let u = form.evaluate(&c).unwrap();
            assert!(u.certify());
            assert_eq!(factorize(&u, None).unwrap(), form);
        }
        for _ in 0..20 {
            let u = random_form(&c, &mut rng).evaluate(&c).unwrap();
            let v = random_form(&c, &mut rng).evaluate(&c).unwrap();
            let uv = u.mul(&v).unwrap();
            assert!(uv.certify());
            let inv = u.inverse().unwrap();
            assert!(inv.certify());
            assert!(u.mul(&inv).unwrap().is_one());
        }
    }
}

#[test]
fn group_axioms_at_truncation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let c = ctx(&standard::a1_affine(), 5);
    for _ in 0..10 {
        let (u, v, w) = (random_element(&c, &mut rng, 4), random_element(&c, &mut rng, 4), random_element(&c, &mut rng, 4));
        assert_eq!(u.mul(&v).unwrap().mul(&w).unwrap(), u.mul(&v.mul(&w).unwrap()).unwrap());
        assert!(u.inverse().unwrap().mul(&u).unwrap().is_one());
    }
}

#[test]
fn not_group_like_is_rejected() {
    let c = ctx(&standard::a2(), 3);
    let x = AlgebraElement::one(&c).add(&AlgebraElement::basis_vector(&c, 0)).unwrap().add(&AlgebraElement::basis_vector(&c, 0).pow(2).unwrap()).unwrap();
    assert!(matches!(GroupLikeElement::new(x), Err(GroupFiltError::NotGroupLike)));
    let u = GroupLikeElement::exp_basis(&c, 0, &q(1));
    let psi = vec![c.basis()[1].root.clone()];
    assert!(matches!(factorize(&u, Some(&psi)), Err(GroupFiltError::SupportEscapesPsi(_))));
}

#[test]
fn decompositions_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (a, h) in [(standard::a1_affine(), 5), (standard::a2(), 3), (standard::hyperbolic(3), 4)] {
        let c = ctx(&a, h);
        let psi = c.roots();
        for i in 0..a.rank() {
            let simple = Root::simple(a.rank(), i);
            let prime: Vec<Root> = psi.iter().filter(|r| **r != simple).cloned().collect();
            for _ in 0..8 {
                let u = random_form(&c, &mut rng).evaluate(&c).unwrap();
                for prime_first in [true, false] {
                    let d = decompose(&u, &psi, &prime, Requirement::Ideal, prime_first).unwrap();
                    let back = if prime_first { d.u1.mul(&d.u2) } else { d.u2.mul(&d.u1) }.unwrap();
                    assert_eq!(back, u);
                    assert!(factorize(&d.u1, Some(&prime)).is_ok());
                    assert!(factorize(&d.u2, Some(&[simple.clone()])).is_ok());
                }
                let d = decompose(&u, &psi, &prime, Requirement::Ideal, true).unwrap();
                let samples: Vec<GroupLikeElement> = (0..3).map(|_| random_element(&c, &mut rng, 3)).collect();
                assert!(conjugation_stable(&d.u1, &samples, &prime).unwrap());
                // An element already in U_{Ψ′} has trivial complement.
                let d1 = decompose(&d.u1, &psi, &prime, Requirement::Plain, true).unwrap();
                assert!(d1.u2.is_one());
            }
        }
        // {α_i} is not an ideal of Δ⁺ once α_i + α_j is a root.
        let s0 = vec![Root::simple(a.rank(), 0)];
        let r = decompose(&GroupLikeElement::one(&c), &psi, &s0, Requirement::Ideal, true);
        assert!(matches!(r, Err(GroupFiltError::NotIdeal(_))));
    }
}

#[test]
fn degree_layers_are_additive() {
    // U_{Ψ(d)}/U_{Ψ(d+1)} → ⊕_{ht α = d} g_α reads the linear coefficients of height d.
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let c = ctx(&standard::a1_affine(), 6);
    for d in 2..=4i64 {
        let deep: Vec<usize> = (0..c.basis().len()).filter(|&k| c.basis()[k].height() >= d).collect();
        let gen = |rng: &mut ChaCha8Rng| {
            let mut g = GroupLikeElement::one(&c);
            for _ in 0..4 {
                let k = deep[rng.gen_range(0..deep.len())];
                g = g.mul(&GroupLikeElement::exp_basis(&c, k, &rand_lambda(rng))).unwrap();
            }
            g
        };
        for _ in 0..5 {
            let (u, v) = (gen(&mut rng), gen(&mut rng));
            let uv = u.mul(&v).unwrap();
            for &k in deep.iter().filter(|&&k| c.basis()[k].height() == d) {
                let lhs = uv.element().linear_coeff(k);
                assert_eq!(lhs, u.element().linear_coeff(k) + v.element().linear_coeff(k));
            }
        }
    }
}

#[test]
fn quotient_by_an_ideal_is_commutative_on_commuting_layers() {
    // Ψ′ = roots of height ≥ 2 is an ideal of Δ⁺ containing all sums; images in the quotient commute.
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let c = ctx(&standard::a1_affine(), 5);
    let psi = c.roots();
    let prime: Vec<Root> = psi.iter().filter(|r| r.height() >= 2).cloned().collect();
    for _ in 0..5 {
        let (u, v) = (random_element(&c, &mut rng, 3), random_element(&c, &mut rng, 3));
        let a = decompose(&u.mul(&v).unwrap(), &psi, &prime, Requirement::Ideal, false).unwrap();
        let b = decompose(&v.mul(&u).unwrap(), &psi, &prime, Requirement::Ideal, false).unwrap();
        assert_eq!(a.u2, b.u2);
    }
}

#[test]
fn omega_membership_at_the_origin_is_integrality() {
    let model = ValuedFieldModel::new(2).unwrap();
    let a = standard::a1_affine();
    let c = ctx(&a, 4);
    let ap = Apartment::essential(&a, 4).unwrap();
    let origin = Filter::point(vec![q(0), q(0)]);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..40 {
        let form = random_form(&c, &mut rng);
        let u = form.evaluate(&c).unwrap();
        let m = omega_membership(&u, &ap, &origin, &model, None).unwrap();
        assert_eq!(m.member, form.factors.iter().all(|f| model.in_o(&f.lambda)));
    }
    let u = GroupLikeElement::exp_basis(&c, 0, &qr(1, 2));
    let m = omega_membership(&u, &ap, &origin, &model, None).unwrap();
    assert!(!m.member);
    assert_eq!(m.witness.unwrap().lambda, qr(1, 2));
}

#[test]
fn omega_membership_is_monotone_and_a_subgroup() {
    let model = ValuedFieldModel::new(3).unwrap();
    let a = standard::a2();
    let c = ctx(&a, 3);
    let ap = Apartment::essential(&a, 3).unwrap();
    let small = Filter::point(vec![q(0), q(0)]);
    let big = Filter::points(vec![vec![q(0), q(0)], vec![q(2), qr(-1, 3)], vec![q(-1), q(1)]]);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let lam = |rng: &mut ChaCha8Rng| {
        let e: i64 = rng.gen_range(-1..=3);
        qr(rng.gen_range(1..=2), 1) * if e >= 0 { q(3i64.pow(e as u32)) } else { qr(1, 3) }
    };
    let mut members = Vec::new();
    for _ in 0..60 {
        let lambdas: Vec<Q> = (0..c.basis().len()).map(|_| lam(&mut rng)).collect();
        let u = FactoredForm::from_coefficients(&c, &lambdas).evaluate(&c).unwrap();
        let in_big = omega_membership(&u, &ap, &big, &model, None).unwrap().member;
        if in_big {
            assert!(omega_membership(&u, &ap, &small, &model, None).unwrap().member);
            members.push(u);
        }
    }
    assert!(members.len() >= 2);
    for w in members.windows(2) {
        let p = w[0].mul(&w[1]).unwrap();
        assert!(omega_membership(&p, &ap, &big, &model, None).unwrap().member);
        assert!(omega_membership(&w[0].inverse().unwrap(), &ap, &big, &model, None).unwrap().member);
    }
}

fn random_character(c: &AlgebraContext, rng: &mut ChaCha8Rng) -> Character {
    let pool = [q(2), q(3), q(-2), qr(1, 2), qr(2, 3), q(5), qr(-1, 3)];
    loop {
        let chi = Character::new((0..c.datum().rank()).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()).unwrap();
        if c.basis().iter().all(|b| !chi.eval(&b.root).is_one()) {
            return chi;
        }
    }
}

#[test]
fn conjugation_solver_on_affine_sl2() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let c = ctx(&standard::a1_affine(), 6);
    for _ in 0..50 {
        let chi = random_character(&c, &mut rng);
        let u = random_form(&c, &mut rng).evaluate(&c).unwrap();
        let sol = conjugation_solve(&chi, &u, 6).unwrap();
        assert!(sol.identity_holds);
        assert!(sol.v.certify());
        // Independent recomputation of v·t·v⁻¹·t⁻¹.
        let tvt = adjoint_torus(sol.v.inverse().unwrap().element(), &chi);
        assert_eq!(sol.v.element().mul(&tvt).unwrap(), *u.element());
    }
    let chi = random_character(&c, &mut rng);
    assert!(conjugation_solve(&chi, &GroupLikeElement::one(&c), 6).unwrap().v.is_one());
    let degenerate = Character::new(vec![q(2), q(1)]).unwrap();
    let u = GroupLikeElement::exp_basis(&c, c.basis_of(&Root(vec![0, 1]))[0], &q(1));
    assert!(matches!(conjugation_solve(&degenerate, &u, 6), Err(GroupFiltError::CharacterDegenerate(r)) if r == vec![0, 1]));
}

#[test]
fn degree_bounds() {
    for (a, m) in [(standard::a1_affine(), 2), (standard::a2(), 1), (standard::hyperbolic(3), 3)] {
        let r = degree_bound_audit(&a, 12).unwrap();
        assert_eq!(r.m, m);
        assert!(r.bound_holds && r.images_are_roots, "{}", r.summary());
        assert!(r.max_ratio <= q(1 + m));
    }
    let r = degree_bound_audit(&standard::a1(), 12).unwrap();
    assert_eq!((r.pairs, r.max_ratio), (0, q(1)));
    assert!(degree_bound_audit(&standard::a2(), 0).is_err());
}

#[test]
fn factored_forms_serialize() {
    let c = ctx(&standard::a2(), 3);
    let f = FactoredForm::from_coefficients(&c, &[q(1), qr(-1, 2), q(0)]);
    let js = f.to_json();
    assert_eq!(js[1]["lambda"], "-1/2");
    assert!(js[0]["root"].is_array() && js[0]["basis_index"] == 0);
}
