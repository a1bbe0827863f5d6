//! Weight algebras: finite lattices, (bi-)quantales, Kleene algebra tables,
//! and checkers for the quantale, Kleene and interchange axioms.
//!
//! Elements are indices into the carrier; names are kept for reports.
//! Suprema are checked as binary joins plus bottom annihilation, which on a
//! finite lattice is equivalent to preserving all sups.

mod kleene;
mod laws;
mod lattice;
mod quantale;

pub use kleene::{check_kleene_axioms, KleeneAlgebraTable};
pub use laws::{
    check_algebraic_interchange, check_degeneracy, check_weak_eckmann_hilton, degeneracy_arity,
    degeneracy_check, degeneracy_for_law, degeneracy_witness, interchange_arity, interchange_check,
    interchange_counterexample, weak_eckmann_hilton, EHReport, OrderedBiAlgebra, OrderedBiMagma,
};
pub use lattice::FiniteLattice;
pub use quantale::{
    boolean, boolean_quantale, chain_meet, check_quantale_laws, min_plus, min_plus_quantale,
    quantale_star, BiQuantale, Dioid, FiniteQuantale, Retract, Table,
};
