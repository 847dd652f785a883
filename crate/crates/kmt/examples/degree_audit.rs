//! Height growth under simple reflections.
//!
//! Run with `cargo run --example degree_audit`.

use kmt::groupfilt::{degree_bound_audit, GroupFiltError};
use kmt::rootdata::standard;

fn main() -> Result<(), GroupFiltError> {
    for a in [standard::a2(), standard::a1_affine(), standard::hyperbolic(3)] {
        println!("{}", degree_bound_audit(&a, 8)?.summary());
    }
    Ok(())
}
