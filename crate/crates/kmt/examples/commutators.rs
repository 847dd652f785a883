//! Integer structure constants of commutators of root groups.
//!
//! Run with `cargo run --example commutators`.

use kmt::envalg::{build_context, commutator_constants, Side};
use kmt::num::CoefficientRing;
use kmt::rootdata::{simply_connected_datum, standard, Root};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, a, h) in [("A2", standard::a2(), 2), ("B2", standard::b2(), 3)] {
        let ctx = build_context(&simply_connected_datum(&a), h, Side::Positive, CoefficientRing::Rationals)?;
        println!("{name}:");
        for e in commutator_constants(&ctx, &Root(vec![1, 0]), &Root(vec![0, 1]))? {
            println!("  γ = {:?}: C_{{{},{}}} = {}", e.gamma, e.p, e.q, e.c);
        }
    }
    Ok(())
}
