//! Convolution algebras over finite relational structures.
//!
//! A relational structure `X` carries ternary relations `R^x_{yz}` ("`x`
//! splits into `y` then `z`"); a weight algebra `Q` is a finite quantale or
//! bi-quantale. Convolution `(f ∗ g) x = ⋁_{R^x_{yz}} f y • g z` lifts
//! structure from both to the function space `Q^X`. The crate checks that
//! correspondence mechanically: which laws of `X` and `Q` give which laws of
//! `Q^X`, and which side conditions are needed to reflect them back.
//!
//! Modules, bottom-up:
//!
//! * [`weights`]: lattices, quantales, bi-quantales, Kleene algebra tables.
//! * [`relstruct`]: relational magmas and bi-magmas with their law checkers.
//! * [`convolution`]: weighted functions, the lifted algebra, the graded star.
//! * [`partialmon`]: partial monoids and partial interchange monoids.
//! * [`langmodels`]: words with concatenation and shuffle.
//! * [`graphmodels`]: digraphs, pomsets, subsumption and graph types.
//! * [`correspond`]: the lift/reflect correspondence engine and counterexample search.
//! * [`duality`]: atom structures, complex algebras and their dual morphisms.
//! * [`format`]: the JSON structure file format and named presets.

pub mod convolution;
pub mod correspond;
pub mod duality;
mod error;
pub mod format;
pub mod graphmodels;
pub mod langmodels;
pub mod order;
pub mod partialmon;
pub mod relstruct;
mod report;
pub mod weights;

pub use error::{Error, Result};
pub use report::{LawCheck, LawReport};

/// Selects one of the two compositions of a bi-structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    /// The sequential composition.
    Seq,
    /// The parallel composition.
    Par,
}

impl std::fmt::Display for Which {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Which::Seq => "seq",
            Which::Par => "par",
        })
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/convolution.md")]
    mod convolution {}
    #[doc = include_str!("../../../book/src/correspondence.md")]
    mod correspondence {}
    #[doc = include_str!("../../../book/src/star.md")]
    mod star {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/partial-monoids.md")]
    mod partial_monoids {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
}
