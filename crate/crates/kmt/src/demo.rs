//! Worked examples run end to end, each with explicit pass/fail checks against known outputs.

use std::time::Instant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::apartment::{
    enclosure, fixator_compare, weyl_fixator_generators, Apartment, ApartmentError, EnclosureVariant, Filter,
    FixatorComparison,
};
use crate::envalg::{
    build_context, commutator_constants, mitzman_suite, AlgebraContext, EnvAlgError, Side,
};
use crate::groupfilt::{
    adjoint_torus, conjugation_solve, density_counterexample, factorize, Character, FactoredForm, GroupFiltError,
};
use crate::loopsl2::{
    expected_twisted_exp_h, fixator_witness, free_product_normal_form, integral_membership,
    pi_mitzman_closed_form, pi_mitzman_power, pi_twisted_exp_h, recompose, uma_membership_sl2, FactorJson,
    IntegralSubgroup, Laurent, LaurentMatrix, LoopError, OmegaData, OmegaGroup,
};
use crate::num::{fmt_q, q, qr, CoefficientRing, ScalarError, ValuedFieldModel, Q};
use crate::rootdata::{simply_connected_datum, standard, KacMoodyMatrix, Root, RootDataError};

pub const DEMO_NAMES: [&str; 8] = [
    "sl2-exp",
    "free-product",
    "density",
    "conjugate-solve",
    "mitzman",
    "commutator-constants",
    "enclosure",
    "fixator-compare",
];

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("unknown demo {name:?}; expected one of {names}", name = .0, names = DEMO_NAMES.join(", "))]
    UnknownDemo(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    EnvAlg(#[from] EnvAlgError),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    GroupFilt(#[from] GroupFiltError),
    #[error(transparent)]
    Apartment(#[from] ApartmentError),
}

/// Optional overrides; each demo documents its defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DemoOptions {
    pub n: Option<i64>,
    pub lambda: Option<Q>,
    pub window: Option<u32>,
    pub p: Option<i64>,
    pub m: Option<i64>,
    pub height: Option<u32>,
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub demo: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl DemoReport {
    fn new(demo: &str, checks: Vec<Check>, data: Value) -> Self {
        DemoReport { demo: demo.to_string(), pass: checks.iter().all(|c| c.pass), checks, data }
    }

    /// One `PASS`/`FAIL` line per check followed by the overall verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} {}: {}\n", verdict(c.pass), c.name, c.detail));
        }
        out.push_str(&format!("{} {}\n", verdict(self.pass), self.demo));
        out
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), pass, detail: detail.into() }
}

fn positive(name: &str, v: i64) -> Result<i64, DemoError> {
    if v <= 0 {
        return Err(DemoError::InvalidOption(format!("{name} must be positive")));
    }
    Ok(v)
}

/// Runs the named demo.
pub fn run_demo(name: &str, opts: &DemoOptions) -> Result<DemoReport, DemoError> {
    match name {
        "sl2-exp" => sl2_exp(opts),
        "free-product" => free_product(opts),
        "density" => density(opts),
        "conjugate-solve" => conjugate_solve(opts),
        "mitzman" => mitzman(opts),
        "commutator-constants" => commutators(opts),
        "enclosure" => enclosure_demo(opts),
        "fixator-compare" => fixator(opts),
        _ => Err(DemoError::UnknownDemo(name.to_string())),
    }
}

/// π([exp]λh_n) against diag(1 + λtⁿ + … + λᵏt^{kn}, 1 − λtⁿ) and π(h_n^{[p]}) against
/// t^{np}·binom(h+p−1, p). Defaults: n = 1, λ = 1/3, window k = 8.
fn sl2_exp(opts: &DemoOptions) -> Result<DemoReport, DemoError> {
    let n = positive("n", opts.n.unwrap_or(1))?;
    let lambda = opts.lambda.clone().unwrap_or_else(|| qr(1, 3));
    let k = opts.window.unwrap_or(8);
    if k == 0 {
        return Err(DemoError::InvalidOption("window must be positive".into()));
    }
    let ring = CoefficientRing::Rationals;
    let got = pi_twisted_exp_h(n, &lambda, k, ring)?;
    let geometric = Laurent::from_terms((0..=i64::from(k)).map(|j| (j * n, num_traits::pow(lambda.clone(), j as usize))));
    let linear = Laurent::from_terms([(0, q(1)), (n, -lambda.clone())]);
    let diag_ok = got.entry(0, 0).truncate(i64::from(k) * n) == geometric && got.entry(1, 1) == &linear;
    let off_ok = got.entry(0, 1).is_zero() && got.entry(1, 0).is_zero();
    let mut powers_ok = true;
    for p in 0..=6u32 {
        powers_ok &= pi_mitzman_power(n, p, ring)? == pi_mitzman_closed_form(n, p, ring);
    }
    let checks = vec![
        check("diagonal", diag_ok, format!("upper-left {}, lower-right {}", got.entry(0, 0), got.entry(1, 1))),
        check("off-diagonal", off_ok, "both zero"),
        check("closed form", got == expected_twisted_exp_h(n, &lambda, k, ring)?, "matches the geometric-series formula"),
        check("unit determinant", got.has_unit_det(), "det = 1 within the window"),
        check("mitzman powers", powers_ok, format!("π(h_{n}^[p]) = t^(np)·binom(h+p-1, p) for p ≤ 6")),
    ];
    let data = json!({ "n": n, "lambda": fmt_q(&lambda), "window": k, "matrix": got.to_json() });
    Ok(DemoReport::new("sl2-exp", checks, data))
}

/// g = (1 − ϖt, t; −ϖ²t, 1 + ϖt) ∈ SL₂(𝒪[t]).
pub fn strict_inclusion_element(model: &ValuedFieldModel) -> LaurentMatrix {
    let w = model.uniformizer();
    LaurentMatrix::sl2(
        CoefficientRing::ValuedField(*model),
        Laurent::from_terms([(0, q(1)), (1, -w.clone())]),
        Laurent::monomial(1, q(1)),
        Laurent::monomial(1, -(&w * &w)),
        Laurent::from_terms([(0, q(1)), (1, w)]),
    )
    .expect("determinant one")
}

/// The element g above (ϖ = 2) lies in U₀^{pm+} but not in U₀^{++}, and the fixator witness of
/// Ω = {0, z} with ᾱ₁(z) = p (default 2) lies in G_Ω but not in V_Ω·N̂_Ω.
fn free_product(opts: &DemoOptions) -> Result<DemoReport, DemoError> {
    let p = positive("p", opts.p.unwrap_or(2))?;
    let model = ValuedFieldModel::new(2)?;
    let g = strict_inclusion_element(&model);
    let word = free_product_normal_form(&g)?;
    let pm = integral_membership(&g, IntegralSubgroup::U0PmPlus, &model)?;
    let pp = integral_membership(&g, IntegralSubgroup::U0PlusPlus, &model)?;
    let inv = fmt_q(&model.pi_pow(-1));
    let witness_ok = pp.witness.as_deref().is_some_and(|w| w.contains(&inv));
    let omega = OmegaData::pair(p);
    let h = fixator_witness(p, &model);
    let in_g = uma_membership_sl2(&h, &omega, OmegaGroup::GOmega, &model)?;
    let in_vn = uma_membership_sl2(&h, &omega, OmegaGroup::VOmegaNHat, &model)?;
    let checks = vec![
        check("recompose", recompose(&word, *g.ring()) == g, format!("{} alternating factors", word.len())),
        check("in U0 pm+", pm.member, "entries in O[t], upper unitriangular mod t"),
        check(
            "not in U0 ++",
            !pp.member && witness_ok,
            format!("witness {}", pp.witness.clone().unwrap_or_default()),
        ),
        check("witness fixes Omega", in_g.member, in_g.witness.clone().unwrap_or_else(|| "congruences hold".into())),
        check(
            "witness outside V.N",
            !in_vn.member,
            in_vn.witness.clone().unwrap_or_default(),
        ),
    ];
    let data = json!({
        "p": p,
        "g": g.to_json(),
        "normal_form": word.iter().map(FactorJson::from).collect::<Vec<_>>(),
        "fixator_witness": h.to_json(),
    });
    Ok(DemoReport::new("free-product", checks, data))
}

/// The generated subgroup of the 𝔽₂-quotient for (2, −m; −m, 2); default m = 3.
fn density(opts: &DemoOptions) -> Result<DemoReport, DemoError> {
    let m = opts.m.unwrap_or(3);
    let start = Instant::now();
    let r = density_counterexample(m)?;
    let secs = start.elapsed().as_secs_f64();
    let mut checks = vec![
        check("complement basis", r.listed_basis_ok, format!("dimension {}", r.complement_dim)),
        check("missing element", r.missing_exp_e2f, "[exp](e^(2)*f) is not a word in a, b"),
    ];
    if m == 3 {
        checks.push(check("quotient order", r.quotient_order == 16, r.quotient_order.to_string()));
        checks.push(check("subgroup order", r.word_group_order == 8, r.word_group_order.to_string()));
        checks.push(check("(ab)^2", r.square_identity, r.ab_squared.clone()));
        checks.push(check("(ab)^4 = 1", r.fourth_power_is_one, "and (ba)^4 = 1"));
        checks.push(check("runtime", secs < 5.0, format!("{secs:.2} s")));
    } else {
        checks.push(check(
            "proper subgroup",
            r.word_group_order < r.quotient_order,
            format!("{} < {}", r.word_group_order, r.quotient_order),
        ));
    }
    let data = serde_json::to_value(&r).expect("serializable");
    Ok(DemoReport::new("density", checks, data))
}

fn rational_context(a: &KacMoodyMatrix, h: u32) -> Result<std::sync::Arc<AlgebraContext>, DemoError> {
    Ok(build_context(&simply_connected_datum(a), h, Side::Positive, CoefficientRing::Rationals)?)
}

/// v·t·v⁻¹·t⁻¹ = u in Ã₁ with α₀(t) = 2, α₁(t) = 3 and a fixed u; default height 6.
fn conjugate_solve(opts: &DemoOptions) -> Result<DemoReport, DemoError> {
    let h = opts.height.unwrap_or(6);
    let ctx = rational_context(&standard::a1_affine(), h)?;
    let chi = Character::new(vec![q(2), q(3)])?;
    let lambdas: Vec<Q> = (0..ctx.basis().len())
        .map(|k| {
            let k = k as i64;
            qr(if k % 2 == 0 { k + 1 } else { -k - 1 }, k % 3 + 1)
        })
        .collect();
    let u = FactoredForm::from_coefficients(&ctx, &lambdas).evaluate(&ctx)?;
    let sol = conjugation_solve(&chi, &u, h)?;
    let tvt = adjoint_torus(sol.v.inverse()?.element(), &chi);
    let recomputed = sol.v.element().mul(&tvt)? == *u.element();
    let checks = vec![
        check("identity", sol.identity_holds, format!("v t v^-1 t^-1 = u up to height {h}")),
        check("recomputed", recomputed, "direct product of v and t v^-1 t^-1"),
        check("group-like", sol.v.certify(), "v is group-like"),
    ];
    let data = json!({
        "height": h,
        "character": chi.simple.iter().map(fmt_q).collect::<Vec<_>>(),
        "u": FactoredForm::from_coefficients(&ctx, &lambdas).to_json(),
        "v": factorize(&sol.v, None)?.to_json(),
    });
    Ok(DemoReport::new("conjugate-solve", checks, data))
}

/// Specializations and convolution of Λ_0, …, Λ_n; default n = 8.
fn mitzman(opts: &DemoOptions) -> Result<DemoReport, DemoError> {
    let n = positive("n", opts.n.unwrap_or(8))? as usize;
    let rows = mitzman_suite(n);
    let all = |f: fn(&crate::envalg::MitzmanRow) -> bool| rows.iter().all(f);
    let checks = vec![
        check("weight", all(|r| r.weighted_homogeneous), "Λ_n has weight n when Z_j has weight j"),
        check("divided power", all(|r| r.divided_power), "Z_i = 0 (i ≥ 2) gives Z_1^(n)"),
        check("power", all(|r| r.power), "Z_i = Z^i gives Z^n"),
        check("geometric", all(|r| r.geometric), "Z_i = t^i Z gives t^n binom(Z+n-1, n)"),
        check("convolution", all(|r| r.convolution), "Λ_n(Z+Z') = Σ Λ_p(Z) Λ_q(Z')"),
    ];
    let lambdas: Vec<String> = crate::envalg::mitzman_sequence(n.min(4)).iter().map(|l| l.to_string()).collect();
    let data = json!({ "n": n, "rows": rows, "lambda": lambdas });
    Ok(DemoReport::new("mitzman", checks, data))
}

/// Constants for the simple pairs of A₂ and B₂.
fn commutators(_opts: &DemoOptions) -> Result<DemoReport, DemoError> {
    let pair = (Root(vec![1, 0]), Root(vec![0, 1]));
    let a2 = commutator_constants(&rational_context(&standard::a2(), 2)?, &pair.0, &pair.1)?;
    let b2 = commutator_constants(&rational_context(&standard::b2(), 3)?, &pair.0, &pair.1)?;
    let a2_ok = a2.len() == 1 && a2[0].gamma == vec![1, 1] && a2[0].c.abs() == 1;
    let b2_ok = b2.len() == 2 && b2.iter().all(|e| e.c.abs() == 1 || e.c.abs() == 2);
    let show = |t: &[crate::envalg::CommutatorEntry]| {
        t.iter().map(|e| format!("C({},{})={}", e.p, e.q, e.c)).collect::<Vec<_>>().join(" ")
    };
    let checks = vec![
        check("A2", a2_ok, show(&a2)),
        check("B2", b2_ok, show(&b2)),
    ];
    Ok(DemoReport::new("commutator-constants", checks, json!({ "A2": a2, "B2": b2 })))
}

/// Enclosures of a two-point set in the essential Ã₁ apartment; default height 6.
fn enclosure_demo(opts: &DemoOptions) -> Result<DemoReport, DemoError> {
    let h = opts.height.unwrap_or(6);
    let ap = Apartment::essential(&standard::a1_affine(), h)?;
    let pts = vec![vec![q(0), q(0)], vec![qr(3, 2), qr(-1, 2)]];
    let omega = Filter::points(pts.clone());
    let variants = [EnclosureVariant::ClDelta, EnclosureVariant::ClSi, EnclosureVariant::ClSharp];
    let encl = variants.iter().map(|&v| enclosure(&ap, &omega, v)).collect::<Result<Vec<_>, _>>()?;
    let mut idempotent = true;
    for e in &encl[..2] {
        idempotent &= enclosure(&ap, &e.clone().into_filter(), e.variant)? == *e;
    }
    let (mut nested, mut contains) = (true, true);
    for i in -8..=8 {
        for j in -8..=8 {
            let y = vec![qr(i, 2), qr(j, 2)];
            nested &= (!encl[0].contains(&y) || encl[1].contains(&y)) && (!encl[1].contains(&y) || encl[2].contains(&y));
        }
    }
    for t in 0..=4 {
        let t = qr(t, 4);
        let y: Vec<Q> = pts[0].iter().zip(&pts[1]).map(|(a, b)| a * &t + b * (Q::one() - &t)).collect();
        contains &= encl[0].contains(&y);
    }
    let checks = vec![
        check("segment", contains, "the segment between the points lies in cl"),
        check("idempotent", idempotent, "cl(cl Ω) = cl Ω for cl and cl^si"),
        check("nested", nested, "cl ⊆ cl^si ⊆ cl^# on a half-integer grid"),
    ];
    let data = json!({
        "points": pts.iter().map(|p| p.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "enclosures": encl,
    });
    Ok(DemoReport::new("enclosure", checks, data))
}

/// The fixator of y with δ(y) = 1, ᾱ₁(y) = 1/2 in Ã₁ against the reflections through y; default
/// search cap 20.
fn fixator(opts: &DemoOptions) -> Result<DemoReport, DemoError> {
    let cap = opts.cap.unwrap_or(20);
    let ap = Apartment::essential(&standard::a1_affine(), opts.height.unwrap_or(6))?;
    let y = vec![qr(1, 2), qr(1, 2)];
    let omega = Filter::point(y.clone());
    let gens = weyl_fixator_generators(&ap, &omega)?;
    let cmp = fixator_compare(&ap, &omega, cap)?;
    let witness_ok = match &cmp {
        FixatorComparison::StrictlyLargerWithWitness { witness } => {
            witness.apply(&y) == y
                && !witness.linear.word.is_empty()
                && witness.translation.iter().any(|t| !t.is_zero())
                && witness.translation.iter().all(|t| t.is_integer())
        }
        _ => false,
    };
    let checks = vec![
        check("no walls", gens.is_empty(), format!("{} reflections fix y", gens.len())),
        check(
            "strictly larger",
            witness_ok,
            "a translation by an integral coweight composed with a nontrivial linear part fixes y",
        ),
    ];
    let data = json!({ "y": y.iter().map(fmt_q).collect::<Vec<_>>(), "cap": cap, "comparison": cmp });
    Ok(DemoReport::new("fixator-compare", checks, data))
}
