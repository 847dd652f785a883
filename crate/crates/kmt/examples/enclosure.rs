//! f_Ω and the enclosures of a finite set in the affine sl₂ apartment.
//!
//! Run with `cargo run --example enclosure`.

use kmt::apartment::{enclosure, f_omega, Apartment, EnclosureVariant, Filter};
use kmt::num::{q, qr};
use kmt::rootdata::{standard, Root};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ap = Apartment::essential(&standard::a1_affine(), 4)?;
    let omega = Filter::points(vec![vec![q(0), q(0)], vec![qr(3, 2), qr(-1, 2)]]);
    for alpha in [Root(vec![1, 0]), Root(vec![0, 1]), Root(vec![1, 2])] {
        println!("f_Ω({:?}) = {}", alpha.0, f_omega(&ap, &omega, &alpha)?);
    }
    for v in [EnclosureVariant::ClDelta, EnclosureVariant::ClSi, EnclosureVariant::ClSharp] {
        let e = enclosure(&ap, &omega, v)?;
        println!("{v:?}: {} half-spaces", e.halfspaces.len());
    }
    Ok(())
}
