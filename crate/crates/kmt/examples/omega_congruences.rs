//! Congruence descriptions of Ω-subgroups of SL₂ over a local field, tested on the matrix
//! that fixes Ω = {0, z} without lying in V_Ω·N̂_Ω.
//!
//! Run with `cargo run --example omega_congruences`.

use kmt::loopsl2::{fixator_witness, uma_membership_sl2, OmegaData, OmegaGroup};
use kmt::num::ValuedFieldModel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = ValuedFieldModel::new(2)?;
    for p in 2..=4 {
        let g = fixator_witness(p, &model);
        let omega = OmegaData::pair(p);
        println!("p = {p}: {g}");
        for group in [OmegaGroup::GOmega, OmegaGroup::VOmega, OmegaGroup::VOmegaNHat] {
            let r = uma_membership_sl2(&g, &omega, group, &model)?;
            println!("  {group:?}: {} {}", r.member, r.witness.unwrap_or_default());
        }
    }
    Ok(())
}
