//! Chimneys r(F, F^v) = cl(F + F^v) and their évasée, solid and full flags.

use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::num::Q;

use super::{enclosure, Apartment, ApartmentError, Enclosure, EnclosureVariant, Filter, VectorFacet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chimney {
    pub filter: Filter,
    /// The Δ-enclosure of the filter.
    pub enclosure: Enclosure,
    /// The direction's J is of finite type.
    pub evasee: bool,
    /// Whether the direction's fixator in W^v is finite; `None` when the truncated test cannot
    /// decide.
    pub solid: Option<bool>,
    /// The support of F + F^v spans V.
    pub full: bool,
}

/// The (shortened) chimney germ F + ξ + F^v with F = germ_x(x + base) and ξ ∈ F̄^v.
pub fn chimney(
    ap: &Apartment,
    x: Vec<Q>,
    base: VectorFacet,
    direction: VectorFacet,
    shortening: Vec<Q>,
) -> Result<Chimney, ApartmentError> {
    let filter = Filter::Chimney { x, base: base.clone(), direction: direction.clone(), shortening };
    let enclosure = enclosure(ap, &filter, EnclosureVariant::ClDelta)?;
    let a = ap.datum().matrix();
    let evasee = a.subset_is_finite_type(&direction.j);

    let base_span = base.span(ap);
    let dir_span = direction.span(ap);
    let mut all = base_span.clone();
    all.extend(dir_span.iter().cloned());
    let full = linalg::rank(&all) == ap.dim();

    // The fixator of F^v in W^v is the conjugate of W_J. Its part fixing the support of the
    // direction pointwise is W_{J_s}, J_s = {j ∈ J : α_j vanishes on w⁻¹·span}.
    let solid = if evasee {
        Some(true)
    } else {
        let w_inv = crate::rootdata::WeylElement::from_word(ap.datum(), &direction.word).inverse(ap.datum());
        let pulled: Vec<Vec<Q>> = dir_span.iter().map(|v| w_inv.apply_v(v)).collect();
        let js: Vec<usize> = direction
            .j
            .iter()
            .copied()
            .filter(|&j| {
                let r = crate::rootdata::Root::simple(ap.datum().rank(), j);
                pulled.iter().all(|v| num_traits::Zero::is_zero(&ap.eval(&r, v)))
            })
            .collect();
        if !a.subset_is_finite_type(&js) {
            Some(false)
        } else {
            None
        }
    };
    Ok(Chimney { filter, enclosure, evasee, solid, full })
}
