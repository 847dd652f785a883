use kmt::apartment::*;
use kmt::num::{ceil_q, q, qr, qz, Q};
use kmt::rootdata::{standard, KacMoodyMatrix, Root, RootDatum};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn atilde() -> Apartment {
    Apartment::essential(&standard::a1_affine(), 6).unwrap()
}

/// Ã₁ with Y = ℤα_0^∨ ⊕ ℤα_1^∨ ⊕ ℤd, so that the simple roots are independent.
fn atilde_free() -> Apartment {
    let datum = RootDatum::new(
        standard::a1_affine(),
        3,
        vec![vec![1, 0, 0], vec![0, 1, 0]],
        vec![vec![2, -2, 1], vec![-2, 2, 0]],
    )
    .unwrap();
    Apartment::new(datum, 6).unwrap()
}

fn pt(v: &[Q]) -> Vec<Q> {
    v.to_vec()
}

fn rand_q(rng: &mut ChaCha8Rng) -> Q {
    qr(rng.gen_range(-12..=12), rng.gen_range(1..=4))
}

fn rand_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| rand_q(rng)).collect()
}

fn sample_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<ExtendedValue> {
    (0..n)
        .map(|i| match i % 5 {
            0 => ExtendedValue::Infinity,
            1 | 2 => ExtendedValue::ValuePlus(rand_q(rng)),
            _ => ExtendedValue::Value(rand_q(rng)),
        })
        .collect()
}

#[test]
fn extended_value_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let vals = sample_values(&mut rng, 50);
    let zero = ExtendedValue::zero();
    for a in &vals {
        assert_eq!(a + &zero, *a);
        assert_eq!(a + &ExtendedValue::Infinity, ExtendedValue::Infinity);
        assert_eq!(a.to_string().parse::<ExtendedValue>().unwrap(), *a);
        for b in &vals {
            assert_eq!(a + b, b + a);
            // Totality and antisymmetry.
            assert!(a <= b || b <= a);
            if a <= b && b <= a {
                assert_eq!(a, b);
            }
            for c in &vals {
                assert_eq!(&(a + b) + c, a + &(b + c));
                if a <= b {
                    assert!(&(a + c) <= &(b + c), "monotonicity {a} {b} {c}");
                }
                if a <= b && b <= c {
                    assert!(a <= c);
                }
            }
        }
    }
    // r < r⁺ < s for r < s, and admissibility matches the order.
    let (r, s) = (qr(1, 3), qr(1, 2));
    assert!(ExtendedValue::Value(r.clone()) < ExtendedValue::ValuePlus(r.clone()));
    assert!(ExtendedValue::ValuePlus(r.clone()) < ExtendedValue::Value(s));
    assert!(ExtendedValue::Value(r.clone()).admits(&-r.clone()));
    assert!(!ExtendedValue::ValuePlus(r.clone()).admits(&-r));
}

#[test]
fn point_values_match_closed_form() {
    // In the essential coordinates of Ã₁, (α_1 + nδ)(x) = x_1 + n(x_0 + x_1).
    let ap = atilde();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let pts: Vec<Vec<Q>> = (0..3).map(|_| rand_point(&mut rng, 2)).collect();
        let omega = Filter::points(pts.clone());
        for n in -3i64..=3 {
            for sign in [1, -1] {
                let alpha = Root(vec![n * sign, (n + 1) * sign]);
                let c = pts.iter().map(|x| -q(sign) * (&x[1] + q(n) * (&x[0] + &x[1]))).max().unwrap();
                let want = ExtendedValue::Value(qz(ceil_q(&c)));
                assert_eq!(f_omega(&ap, &omega, &alpha).unwrap(), want);
                // Ω ⊂ D(α, f) but not D(α, f − 1).
                let k = want.base().unwrap().clone();
                assert!(pts.iter().all(|x| ap.eval(&alpha, x) + &k >= Q::zero()));
                assert!(pts.iter().any(|x| ap.eval(&alpha, x) + &k - q(1) < Q::zero()));
            }
        }
    }
}

#[test]
fn facet_germ_values_match_sampling() {
    // A local facet germ at x: f(α) = c⁺ exactly when α decreases along the facet.
    let ap = atilde();
    let x = pt(&[q(1), q(0)]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (j, sign) in [(vec![], 1i8), (vec![0], 1), (vec![1], -1), (vec![], -1)] {
        let facet = VectorFacet { word: vec![], j: j.clone(), sign };
        let omega = Filter::Facet { x: x.clone(), facet: facet.clone(), variant: FacetVariant::Local };
        for alpha in ap.real_roots() {
            let f = f_omega(&ap, &omega, &alpha).unwrap();
            let c = -ap.eval(&alpha, &x);
            let decreasing = (0..20).any(|_| {
                let v: Vec<Q> = (0..2)
                    .map(|i| if j.contains(&i) { Q::zero() } else { q(i64::from(sign) * rng.gen_range(1..=9)) })
                    .collect();
                ap.eval(&alpha, &v).is_negative()
            });
            let want = if decreasing && c.is_integer() {
                ExtendedValue::ValuePlus(c)
            } else {
                ExtendedValue::Value(qz(ceil_q(&c)))
            };
            assert_eq!(f, want, "α = {:?}, J = {j:?}", alpha.0);
            for variant in [FacetVariant::Facet, FacetVariant::Closed] {
                let other = Filter::Facet { x: x.clone(), facet: facet.clone(), variant };
                assert_eq!(f_omega(&ap, &other, &alpha).unwrap(), f);
            }
        }
    }
}

#[test]
fn concavity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let aps = [
        atilde(),
        Apartment::essential(&standard::a2(), 3).unwrap(),
        Apartment::essential(&standard::hyperbolic(3), 4).unwrap(),
    ];
    let mut triples = 0;
    for ap in &aps {
        let roots = ap.roots();
        for round in 0..12 {
            let omega = if round % 3 == 2 {
                let facet = VectorFacet { word: vec![0], j: vec![1], sign: 1 };
                Filter::Facet { x: rand_point(&mut rng, ap.dim()), facet, variant: FacetVariant::Local }
            } else {
                Filter::points((0..1 + round % 3).map(|_| rand_point(&mut rng, ap.dim())).collect())
            };
            let pairs: Vec<(Root, Root)> = (0..15)
                .map(|_| {
                    let a = roots[rng.gen_range(0..roots.len())].clone();
                    let b = roots[rng.gen_range(0..roots.len())].clone();
                    (a, b)
                })
                .collect();
            triples += pairs.len();
            let free_enough = ap.datum().is_free();
            match concavity_check(ap, &omega, &pairs) {
                Ok(v) => assert_eq!(v, None),
                Err(ApartmentError::UnsupportedFilterShape(_)) => assert!(!free_enough),
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(triples >= 500);
}

#[test]
fn enclosure_is_idempotent_and_nested() {
    let ap = atilde();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let pts: Vec<Vec<Q>> = (0..3).map(|_| rand_point(&mut rng, 2)).collect();
        let omega = Filter::points(pts.clone());
        let cl = enclosure(&ap, &omega, EnclosureVariant::ClDelta).unwrap();
        let si = enclosure(&ap, &omega, EnclosureVariant::ClSi).unwrap();
        let sharp = enclosure(&ap, &omega, EnclosureVariant::ClSharp).unwrap();
        for variant in [EnclosureVariant::ClDelta, EnclosureVariant::ClSi] {
            let once = enclosure(&ap, &omega, variant).unwrap();
            let twice = enclosure(&ap, &once.clone().into_filter(), variant).unwrap();
            assert_eq!(once, twice);
        }
        // Ω and its convex combinations lie in cl, and cl ⊆ cl^si ⊆ cl^#.
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            for t in 0..=4 {
                let t = qr(t, 4);
                let y: Vec<Q> = pts[a].iter().zip(&pts[b]).map(|(u, v)| u * &t + v * (q(1) - &t)).collect();
                assert!(cl.contains(&y));
            }
        }
        for i in -8..=8 {
            for j in -8..=8 {
                let y = pt(&[qr(i, 2), qr(j, 2)]);
                if cl.contains(&y) {
                    assert!(si.contains(&y));
                }
                if si.contains(&y) {
                    assert!(sharp.contains(&y));
                }
            }
        }
        let conv = enclosure(&ap, &omega, EnclosureVariant::Conv).unwrap();
        assert!(pts.iter().all(|x| conv.contains(x)));
    }
}

#[test]
fn half_spaces_serialize() {
    let ap = atilde();
    let e = enclosure(&ap, &Filter::point(pt(&[q(0), q(0)])), EnclosureVariant::ClSi).unwrap();
    let h = &e.halfspaces[0];
    assert!(h.is_half_apartment(&ap));
    let js = serde_json::to_value(h).unwrap();
    assert_eq!(js["k"], "0");
    assert_eq!(js["open"], false);
    assert!(js["alpha"].is_array());
    let back: HalfSpace = serde_json::from_value(js).unwrap();
    assert_eq!(&back, h);
}

#[test]
fn coroots_and_wall_reflections() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for a in [standard::a1_affine(), standard::a2(), standard::b2(), standard::hyperbolic(3)] {
        let ap = Apartment::essential(&a, 5).unwrap();
        for alpha in ap.positive_real_roots() {
            let c = coroot_of_real(ap.datum(), alpha).unwrap();
            let cq: Vec<Q> = c.iter().map(|&x| q(x)).collect();
            assert_eq!(ap.eval(alpha, &cq), q(2), "⟨α, α^∨⟩ for {:?}", alpha.0);
            for k in -2..=2 {
                let r = wall_reflection(&ap, alpha, k).unwrap().element;
                for _ in 0..4 {
                    let y = rand_point(&mut rng, ap.dim());
                    assert_eq!(r.apply(&r.apply(&y)), y);
                    assert_eq!(ap.eval(alpha, &r.apply(&y)) + q(k), -(ap.eval(alpha, &y) + q(k)));
                    // Project to the wall: y − ((α(y) + k)/2) α^∨ is fixed.
                    let s = (ap.eval(alpha, &y) + q(k)) / q(2);
                    let w: Vec<Q> = y.iter().zip(&cq).map(|(u, v)| u - &s * v).collect();
                    assert_eq!(r.apply(&w), w);
                }
            }
        }
    }
}

#[test]
fn fixator_of_a_point_off_all_walls_is_larger() {
    // δ(y) = 1 and α_1(y) = 1/2: no real wall passes through y.
    let ap = atilde();
    let y = pt(&[qr(1, 2), qr(1, 2)]);
    let omega = Filter::point(y.clone());
    assert!(weyl_fixator_generators(&ap, &omega).unwrap().is_empty());
    let FixatorComparison::StrictlyLargerWithWitness { witness } = fixator_compare(&ap, &omega, 20).unwrap() else {
        panic!("expected a witness");
    };
    assert_eq!(witness.apply(&y), y);
    // The witness is a transvection: it fixes the hyperplane δ = 1 and moves it elsewhere.
    for t in -5..=5 {
        let z = pt(&[qr(t, 3), q(1) - qr(t, 3)]);
        assert_eq!(witness.apply(&z), z);
    }
    let moved = witness.apply(&pt(&[q(1), q(1)]));
    assert_ne!(moved, pt(&[q(1), q(1)]));
}

#[test]
fn fixators_generated_by_reflections() {
    let ap = atilde();
    let origin = Filter::point(pt(&[q(0), q(0)]));
    assert!(matches!(fixator_compare(&ap, &origin, 6).unwrap(), FixatorComparison::Equal { .. }));
    let a2 = Apartment::essential(&standard::a2(), 3).unwrap();
    for p in [pt(&[q(0), q(0)]), pt(&[q(1), q(0)]), pt(&[qr(1, 3), qr(1, 3)])] {
        let r = fixator_compare(&a2, &Filter::point(p.clone()), 8).unwrap();
        assert!(matches!(r, FixatorComparison::Equal { .. }), "{p:?}: {r:?}");
    }
}

#[test]
fn chimney_flags() {
    let ap = atilde_free();
    let x = pt(&[q(0), q(0), q(0)]);
    let zero = x.clone();
    // Direction F^v(I) = ℚ_{>0}(1, 1, 0), where δ vanishes; J = I is not of finite type.
    let minimal = VectorFacet::minimal(2);
    assert_eq!(minimal.span(&ap).len(), 1);
    let c = chimney(&ap, x.clone(), VectorFacet::chamber(), minimal.clone(), zero.clone()).unwrap();
    assert!(!c.evasee);
    assert_eq!(c.solid, Some(false));
    assert!(c.full);
    let c = chimney(&ap, x.clone(), minimal.clone(), minimal, zero.clone()).unwrap();
    assert!(!c.full);

    let c = chimney(&ap, x.clone(), VectorFacet::chamber(), VectorFacet::chamber(), zero.clone()).unwrap();
    assert!(c.evasee && c.full);
    assert_eq!(c.solid, Some(true));
    // A sector germ: negative roots are unbounded on it, and far points of x + C^v are enclosed.
    for alpha in ap.positive_real_roots() {
        assert_eq!(f_omega(&ap, &c.filter, &alpha.neg()).unwrap(), ExtendedValue::Infinity);
    }
    let far = pt(&[q(50), q(52), q(7)]);
    assert!(VectorFacet::chamber().closure_contains(&ap, &far));
    assert!(c.enclosure.contains(&far));

    let bad = chimney(&ap, x, VectorFacet::chamber(), VectorFacet::chamber(), pt(&[q(0), q(0), q(-1)]));
    assert!(matches!(bad, Err(ApartmentError::InvalidInput(_))));
}

#[test]
fn narrowness_examples() {
    let ap = atilde();
    let origin = pt(&[q(0), q(0)]);
    let n = narrowness_predicates(&ap, &Filter::point(origin.clone())).unwrap();
    assert!(!n.almost_open && n.narrow);
    let germ = Filter::Facet { x: origin.clone(), facet: VectorFacet::chamber(), variant: FacetVariant::Local };
    let n = narrowness_predicates(&ap, &germ).unwrap();
    assert!(n.almost_open && n.narrow);
    for p in 2..=4 {
        let z = pt(&[q(-p), q(p)]);
        let n = narrowness_predicates(&ap, &Filter::points(vec![origin.clone(), z])).unwrap();
        assert!(!n.narrow && n.narrow_witness.is_some());
        assert!(n.almost_open);
    }
}

#[test]
fn tits_preorder_on_affine_plane() {
    let ap = atilde();
    let o = pt(&[q(0), q(0)]);
    let t = tits_preorder(&ap, &o, &pt(&[q(1), q(1)]), 50).unwrap();
    assert!(t.leq && t.leq_open && !t.geq && !t.indeterminate);
    let t = tits_preorder(&ap, &o, &pt(&[q(1), q(-1)]), 50).unwrap();
    assert!(!t.leq && !t.geq);
    let t = tits_preorder(&ap, &o, &o, 50).unwrap();
    assert!(t.leq && t.geq);
}

#[test]
fn invalid_inputs_are_reported() {
    let ap = atilde();
    let r = f_omega(&ap, &Filter::point(vec![q(1)]), &Root(vec![1, 0]));
    assert!(matches!(r, Err(ApartmentError::InvalidInput(_))));
    assert!(matches!(
        Apartment::essential(&standard::a2(), 0),
        Err(ApartmentError::HeightBoundTooSmall(_))
    ));
    let germ = Filter::Facet { x: pt(&[q(0), q(0)]), facet: VectorFacet::chamber(), variant: FacetVariant::Local };
    let nd = Apartment::new(kmt::rootdata::simply_connected_datum(&standard::a1_affine()), 4).unwrap();
    assert!(matches!(
        f_omega(&nd, &germ, &Root(vec![1, 0])),
        Err(ApartmentError::UnsupportedFilterShape(_))
    ));
    let _: &KacMoodyMatrix = ap.datum().matrix();
}
