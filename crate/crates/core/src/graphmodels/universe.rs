use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::canon::{canonical, type_par, type_seq, type_subsumes, GraphType};
use super::digraph::Digraph;
use super::term::parse_term;
use crate::error::{Error, Result};
use crate::order::Preorder;
use crate::relstruct::{Carrier, Grading, RelBiMagma, TernaryRelation};

/// Vertex counts above this are refused by [`TypeUniverse::new`].
pub const MAX_UNIVERSE_VERTICES: usize = 5;

/// All graph types with at most `max_vertices` vertices, optionally only
/// posets, with every vertex labeled from `labels` (or unlabeled when
/// `labels` is empty). Types are ordered by vertex count, then by name.
#[derive(Debug, Clone)]
pub struct TypeUniverse {
    pub max_vertices: usize,
    pub labels: Vec<char>,
    pub posets_only: bool,
    types: Vec<GraphType>,
    index: HashMap<GraphType, usize>,
}

impl TypeUniverse {
    pub fn new(max_vertices: usize, labels: &[char], posets_only: bool) -> Result<Self> {
        if max_vertices > MAX_UNIVERSE_VERTICES {
            return Err(Error::Schema(format!("type universes hold at most {MAX_UNIVERSE_VERTICES} vertices")));
        }
        let mut labels = labels.to_vec();
        labels.sort_unstable();
        labels.dedup();
        let choices: Vec<Option<char>> = if labels.is_empty() { vec![None] } else { labels.iter().copied().map(Some).collect() };

        // every graph on n vertices extends its induced subgraph on the first n - 1
        let mut layer: BTreeSet<GraphType> = BTreeSet::from([GraphType::empty()]);
        let mut all: Vec<GraphType> = vec![GraphType::empty()];
        for n in 1..=max_vertices {
            let mut next = BTreeSet::new();
            for t in &layer {
                let g = t.representative();
                for &label in &choices {
                    for outs in 0u32..1 << (n - 1) {
                        for ins in 0u32..1 << (n - 1) {
                            let mut ls = g.labels().to_vec();
                            ls.push(label);
                            let mut adj: Vec<u32> =
                                g.adjacency().iter().enumerate().map(|(u, &a)| a | (ins >> u & 1) << (n - 1)).collect();
                            adj.push(outs);
                            let h = Digraph::from_parts(ls, adj);
                            if !posets_only || h.is_poset() {
                                next.insert(canonical(&h));
                            }
                        }
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort_by_cached_key(|t| (t.len(), t.to_string()));
        let index = all.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Ok(TypeUniverse { max_vertices, labels, posets_only, types: all, index })
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[GraphType] {
        &self.types
    }

    pub fn index_of(&self, t: &GraphType) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Index of the type of a series-parallel term.
    pub fn index_of_term(&self, term: &str) -> Result<usize> {
        let t = canonical(&parse_term(term)?);
        self.index_of(&t).ok_or_else(|| Error::UnknownElement(term.to_string()))
    }

    pub fn carrier(&self) -> Arc<Carrier> {
        Carrier::new(self.types.iter().map(|t| t.to_string())).expect("type names are distinct")
    }

    /// Vertex count as a grading.
    pub fn grading(&self) -> Grading {
        Grading(self.types.iter().map(GraphType::len).collect())
    }

    /// Subsumption between types, a partial order.
    pub fn subsumption_order(&self) -> Preorder {
        let n = self.len();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let (tx, ty) = (&self.types[x], &self.types[y]);
                if x != y && tx.len() == ty.len() && type_subsumes(tx, ty) {
                    pairs.push((x, y));
                }
            }
        }
        Preorder::closure_of(n, pairs)
    }
}

/// The type-level bi-magma: `R^x_{yz}` (sequential) iff `x = [y]·[z]` and
/// `R^x_{yz}` (parallel) iff `x ⪯ [y]∥[z]`, both with unit set `{[ε]}`.
/// Triples whose composite leaves the universe are dropped; vertex count
/// grades both relations, so no decomposition of a member is lost.
pub fn build_type_bimagma(u: &TypeUniverse) -> RelBiMagma {
    let n = u.len();
    let order = u.subsumption_order();
    let mut seq = Vec::new();
    let mut par = Vec::new();
    for y in 0..n {
        for z in 0..n {
            let (ty, tz) = (&u.types[y], &u.types[z]);
            if ty.len() + tz.len() > u.max_vertices {
                continue;
            }
            let s = u.index_of(&type_seq(ty, tz)).expect("closed under composition");
            seq.push((s, y, z));
            let p = u.index_of(&type_par(ty, tz)).expect("closed under composition");
            par.extend(order.below(p).map(|x| (x, y, z)));
        }
    }
    let eps = u.index_of(&GraphType::empty()).expect("ε is a member");
    RelBiMagma::new(
        u.carrier(),
        TernaryRelation::new(n, seq).expect("in range"),
        TernaryRelation::new(n, par).expect("in range"),
        Some(vec![eps]),
        Some(vec![eps]),
    )
    .expect("consistent sizes")
}
