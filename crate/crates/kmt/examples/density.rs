//! Two elements of the pro-unipotent group over 𝔽₂ that generate a proper subgroup of a
//! finite quotient, for the hyperbolic matrices (2, −m; −m, 2).
//!
//! Run with `cargo run --release --example density`.

use kmt::groupfilt::{density_counterexample, GroupFiltError};

fn main() -> Result<(), GroupFiltError> {
    for m in [3, 4] {
        let r = density_counterexample(m)?;
        println!("m = {m}: quotient of order {}, subgroup ⟨a, b⟩ of order {}", r.quotient_order, r.word_group_order);
        println!("  (ab)² = {}", r.ab_squared);
        println!("  (ab)⁴ = 1: {}, [exp](e^(2)*f) missing: {}", r.fourth_power_is_one, r.missing_exp_e2f);
    }
    Ok(())
}
