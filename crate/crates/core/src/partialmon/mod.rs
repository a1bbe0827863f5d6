//! Partial monoids, preordered partial monoids and partial interchange
//! monoids, with their relational encodings.
//!
//! A partial operation is stored as a table defined exactly on its
//! definedness relation `D`; [`PartialOp::apply`] reports
//! [`Error::Undefined`](crate::Error::Undefined) outside it.
//!
//! Structures with several units are accepted as partial monoids, but the
//! conversions to relational bi-magmas require one unit shared by both
//! compositions.

mod monoid;
mod pim;
pub mod presets;

pub use monoid::{
    check_partial_monoid, check_preordered_partial_monoid, to_relational, to_relational_preordered, PartialMonoid,
    PartialOp, PreorderedPartialMonoid,
};
pub use pim::{
    check_pim, check_positive, check_serially_decomposable, check_small_partial_interchange, pim_to_bimagma,
    pim_to_interchange_semigroup, Encoding, PartialInterchangeMonoid,
};
