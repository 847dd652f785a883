//! A point of the affine sl₂ apartment on no wall whose fixator in W^a is nontrivial.
//!
//! Run with `cargo run --example fixator`.

use kmt::apartment::{fixator_compare, weyl_fixator_generators, Apartment, Filter, FixatorComparison};
use kmt::num::{fmt_q, qr};
use kmt::rootdata::standard;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ap = Apartment::essential(&standard::a1_affine(), 6)?;
    let omega = Filter::point(vec![qr(1, 2), qr(1, 2)]);
    println!("reflections through y: {}", weyl_fixator_generators(&ap, &omega)?.len());
    match fixator_compare(&ap, &omega, 20)? {
        FixatorComparison::StrictlyLargerWithWitness { witness } => {
            let t: Vec<String> = witness.translation.iter().map(fmt_q).collect();
            println!("fixing element: linear word {:?}, translation ({})", witness.linear.word, t.join(", "));
        }
        other => println!("{other:?}"),
    }
    Ok(())
}
