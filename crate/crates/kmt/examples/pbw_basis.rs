//! The integral form of 𝒰⁺: PBW monomials, their unimodularity per weight, and twisted
//! exponentials as group-like elements.
//!
//! Run with `cargo run --example pbw_basis`.

use kmt::envalg::{build_context, is_group_like, twisted_exp_basis, Side};
use kmt::num::{qr, CoefficientRing};
use kmt::rootdata::{simply_connected_datum, standard};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = simply_connected_datum(&standard::a1_affine());
    let ctx = build_context(&s, 4, Side::Positive, CoefficientRing::Integers)?;
    println!("basis of the positive root spaces:");
    for (k, b) in ctx.basis().iter().enumerate() {
        println!("  x{k}: weight {:?} ({})", b.root.0, if b.real { "real" } else { "imaginary" });
    }
    println!("change of basis to the divided-power lattice:");
    for c in ctx.pbw_checks() {
        println!("  weight {:?}: dim {}, det {}", c.weight, c.dim, c.det);
    }
    let ctx = build_context(&s, 4, Side::Positive, CoefficientRing::Rationals)?;
    let k = ctx.basis_of(&kmt::rootdata::Root(vec![1, 1]))[0];
    let u = twisted_exp_basis(&ctx, k, &qr(1, 2));
    println!("[exp](1/2)x{k} = {u}");
    println!("group-like: {}", is_group_like(&u));
    Ok(())
}
