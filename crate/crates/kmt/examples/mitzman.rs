//! Mitzman polynomials Λ_n and their identities.
//!
//! Run with `cargo run --example mitzman`.

use kmt::envalg::{mitzman_sequence, mitzman_suite};

fn main() {
    for (n, l) in mitzman_sequence(4).iter().enumerate() {
        println!("Λ_{n} = {l}");
    }
    for row in mitzman_suite(6) {
        println!("n = {}: all identities hold: {}", row.n, row.all());
    }
}
