//! Digraphs and pomsets with serial and parallel composition.
//!
//! `G1·G2` is the disjoint union with every edge from `G1` to `G2` added;
//! `G1∥G2` is the plain disjoint union. Subsumption `G1 ⪯ G2` holds when
//! some vertex bijection `G2 → G1` preserves labels and maps edges to
//! edges, so graphs with more order sit lower. On finite graphs mutual
//! subsumption coincides with isomorphism, which makes subsumption a
//! partial order on graph types.
//!
//! For infinite graphs the coincidence fails. Let `P` be an infinite chain
//! `p(0,0) < p(0,1) < …` beside isolated points `p(i,0)`, `i > 0`, and let
//! `Q` be two infinite chains `q(0,j)` and `q(1,j)` beside isolated points
//! `q(i,0)`, `i > 1`. The maps
//!
//! ```text
//! φ p(0,j) = q(0,j)          ψ q(0,j) = p(0,2j)
//! φ p(2k+1,0) = q(1,k)       ψ q(1,j) = p(0,2j+1)
//! φ p(2k,0) = q(k+1,0)       ψ q(i,0) = p(i-1,0)     (i > 1)
//! ```
//!
//! (with `k > 0` in the third line on the left) are bijections mapping
//! edges to edges in both directions, so `P ⪯ Q ⪯ P`, yet `P` and `Q` are
//! not isomorphic.
//! Only finite graphs are modeled here.

mod canon;
mod digraph;
mod pim;
mod term;
mod universe;

pub use canon::{canonical, type_par, type_seq, type_subsumes, GraphType, EXHAUSTIVE_LIMIT};
pub use digraph::{isomorphic, par, seq, subsumes, subsumption_witness, Digraph, MAX_VERTICES};
pub use pim::{build_graph_pim, MAX_POOL};
pub use term::{parse_term, render};
pub use universe::{build_type_bimagma, TypeUniverse, MAX_UNIVERSE_VERTICES};
