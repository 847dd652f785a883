//! Unique factorization of group-like elements into twisted exponentials, and splitting along
//! a closed subset of roots.
//!
//! Run with `cargo run --example factorize`.

use kmt::envalg::{build_context, Side};
use kmt::groupfilt::{decompose, factorize, FactoredForm, Requirement};
use kmt::num::{q, qr, CoefficientRing};
use kmt::rootdata::{simply_connected_datum, standard, Root};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = build_context(&simply_connected_datum(&standard::a2()), 3, Side::Positive, CoefficientRing::Rationals)?;
    let form = FactoredForm::from_coefficients(&ctx, &[q(1), qr(-1, 2), q(3)]);
    let u = form.evaluate(&ctx)?;
    println!("u = {}", u.element());
    println!("factors: {}", factorize(&u, None)?.to_json());

    let psi: Vec<Root> = ctx.roots().to_vec();
    let ideal = vec![Root(vec![1, 1])];
    let d = decompose(&u, &psi, &ideal, Requirement::Ideal, true)?;
    println!("u = u1·u2 with u1 = {}", d.u1.element());
    println!("               u2 = {}", d.u2.element());
    Ok(())
}
