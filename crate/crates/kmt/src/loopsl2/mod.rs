//! The Ã₁ loop group realization: SL₂ over Laurent polynomials, the representation of the
//! enveloping algebra, free-product normal forms, congruence subgroups and lattice chains.

mod chain;
mod congruence;
mod freeprod;
mod laurent;
mod pi;

pub use chain::{gk_diagonal, lower_elementary, FiltrationLevel, LatticeChain};
pub use congruence::{fixator_witness, uma_membership_sl2, OmegaData, OmegaGroup};
pub use freeprod::{
    free_product_normal_form, in_u_plus, integral_membership, recompose, FactorJson, FreeFactor, IntegralSubgroup,
    MembershipReport,
};
pub use laurent::{Laurent, LaurentMatrix, LaurentMatrixJson, TermJson};
pub use pi::{
    expected_twisted_exp_h, pi_basis_twisted_exp, pi_image, pi_mitzman_closed_form, pi_mitzman_power,
    pi_twisted_exp_h,
};

use thiserror::Error;

use crate::num::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("matrix shapes do not match")]
    Shape,
    #[error("coefficient rings differ")]
    RingMismatch,
    #[error("matrix is not in SL")]
    NotSpecialLinear,
    #[error("the context is not of type Ã₁")]
    NotAffineContext,
    #[error("not in U⁺: {0}")]
    NotInUPlus(String),
    #[error("unsupported Ω: {0}")]
    UnsupportedOmega(String),
    #[error("the answer depends on coefficients beyond the truncation window")]
    TruncationTooShallow,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
