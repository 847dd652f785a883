//! Kac-Moody matrices, root generation systems, Weyl group combinatorics and root classification.

mod datum;
mod matrix;
mod pairs;
mod roots;
mod tits;
mod weyl;

pub use datum::{
    essential_adjoint_datum, extend_datum, simply_connected_datum, DatumMorphism, ExtensionKind,
    RootDatum,
};
pub use matrix::{standard, validate_matrix, Axiom, KacMoodyMatrix, MatrixType, Violation};
pub use pairs::{classify_pair, closed_set_predicates, ClosedSetReport, IntervalEntry, PairClass};
pub use roots::{
    classify_vector, enumerate_real_roots, positive_vectors, enumerate_root_set, enumerate_roots, Root, RootEntry,
    RootSign, RootTable, VectorClass,
};
pub use tits::{tits_cone_membership, TitsMembership};
pub use weyl::WeylElement;

use thiserror::Error;

/// Hard cap on orbit and enumeration sizes.
pub const ROOT_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("matrix must be square and non-empty")]
    NotSquare,
    #[error("not a Kac-Moody matrix: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))]
    NotKacMoody(Vec<Violation>),
    #[error("incompatible root datum: {0}")]
    Incompatible(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a real root: {0:?}")]
    NotRealRoot(Vec<i64>),
    #[error("height bound {bound} too small: {needed:?} escapes the enumerated region")]
    HeightBoundTooSmall { bound: u32, needed: Vec<i64> },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}
