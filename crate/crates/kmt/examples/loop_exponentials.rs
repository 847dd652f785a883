//! Twisted exponentials of h ⊗ tⁿ under the loop representation of affine sl₂.
//!
//! Run with `cargo run --example loop_exponentials`.

use kmt::loopsl2::{pi_mitzman_closed_form, pi_twisted_exp_h, LoopError};
use kmt::num::{qr, CoefficientRing};

fn main() -> Result<(), LoopError> {
    let ring = CoefficientRing::Rationals;
    for n in 1..=2 {
        let m = pi_twisted_exp_h(n, &qr(1, 3), 6, ring)?;
        println!("π([exp](1/3)h_{n}) = {m}");
    }
    for p in 0..=3 {
        println!("π(h_1^[{p}]) = {}", pi_mitzman_closed_form(1, p, ring));
    }
    Ok(())
}
