//! Alternating normal forms in U⁺ ⊂ SL₂(K[t]) and the two integral subgroups they separate.
//!
//! Run with `cargo run --example free_product`.

use kmt::demo::strict_inclusion_element;
use kmt::loopsl2::{free_product_normal_form, integral_membership, FreeFactor, IntegralSubgroup};
use kmt::num::ValuedFieldModel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = ValuedFieldModel::new(2)?;
    let g = strict_inclusion_element(&model);
    println!("g = {g}");
    for f in free_product_normal_form(&g)? {
        match f {
            FreeFactor::Upper(q) => println!("  u_s({q})"),
            FreeFactor::Lower(r) => println!("  u_i({r})"),
        }
    }
    for s in [IntegralSubgroup::U0PmPlus, IntegralSubgroup::U0PlusPlus] {
        let r = integral_membership(&g, s, &model)?;
        println!("{s:?}: member {} {}", r.member, r.witness.unwrap_or_default());
    }
    Ok(())
}
