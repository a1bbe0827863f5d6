//! Finite relational magmas and bi-magmas.
//!
//! A triple `(x, y, z)` in a relation reads `R^x_{yz}`: `x` decomposes into
//! `y` followed by `z`. Checkers scan in lexicographic element order and
//! report the first violating tuple, result element first.

mod laws;
mod magma;

pub use laws::{
    as_multioperation, assoc_counterexample, check_grading, check_rel_assoc, check_rel_comm,
    check_rel_units, check_rel_weak_eckmann_hilton, check_relational_degeneracy,
    check_relational_interchange, is_functional, is_unit_set, rel_degeneracy_witness,
    rel_interchange_arity, rel_interchange_counterexample, unit_failures,
};
pub use magma::{Carrier, Grading, RelBiMagma, RelMagma, TernaryRelation};
