//! The function space `Q^X`: weighted functions, convolution, the lifted
//! algebra and its law checks, the graded Kleene star, antitone functions.
//!
//! Convolution is generic over [`Dioid`](crate::weights::Dioid), so the same
//! code runs with quantale, bi-quantale and Kleene algebra weights.

mod function;
mod lifted;
mod star;

pub use function::{convolve, convolve_at, delta, down_closure, is_antitone, unit_function, WeightedFunction};
pub(crate) use lifted::{run_law, Materialized};
pub use lifted::{
    check_lifted_laws, check_lifted_suite, generated_fragment, Budget, LiftedAlgebra, LiftedLaw, LiftedLawResult,
    Strategy,
};
pub use star::{iterative_star, star_graded};
