//! Positive roots with multiplicities for a few Kac-Moody matrices.
//!
//! Run with `cargo run --example roots`.

use kmt::rootdata::{enumerate_roots, simply_connected_datum, standard, KacMoodyMatrix, RootDataError};

fn show(name: &str, a: &KacMoodyMatrix, h: u32) -> Result<(), RootDataError> {
    let table = enumerate_roots(&simply_connected_datum(a), h)?;
    println!("{name} ({:?}), height ≤ {h}:", a.matrix_type());
    for e in &table.entries {
        println!("  {:?}  mult {}  {}", e.root.0, e.mult, if e.real { "real" } else { "imaginary" });
    }
    Ok(())
}

fn main() -> Result<(), RootDataError> {
    show("A2", &standard::a2(), 2)?;
    show("affine A1", &standard::a1_affine(), 5)?;
    show("hyperbolic m=3", &standard::hyperbolic(3), 4)?;
    Ok(())
}
