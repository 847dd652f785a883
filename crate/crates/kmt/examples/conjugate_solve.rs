//! Solving v·t·v⁻¹·t⁻¹ = u for a torus element t in affine sl₂.
//!
//! Run with `cargo run --example conjugate_solve`.

use kmt::envalg::{build_context, Side};
use kmt::groupfilt::{conjugation_solve, factorize, Character, GroupLikeElement};
use kmt::num::{q, CoefficientRing};
use kmt::rootdata::{simply_connected_datum, standard, Root};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = simply_connected_datum(&standard::a1_affine());
    let ctx = build_context(&s, 6, Side::Positive, CoefficientRing::Rationals)?;
    let chi = Character::new(vec![q(2), q(3)])?;
    let e1 = ctx.basis_of(&Root(vec![0, 1]))[0];
    let u = GroupLikeElement::exp_basis(&ctx, e1, &q(1));
    let sol = conjugation_solve(&chi, &u, 6)?;
    println!("v = {}", factorize(&sol.v, None)?.to_json());
    println!("identity holds to height {}: {}", sol.depth, sol.identity_holds);
    Ok(())
}
