use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a [`Digraph`] can hold.
pub const MAX_VERTICES: usize = 32;

/// A finite loop-free directed graph with optional vertex labels.
///
/// Vertices are `0..n`; `adj[u]` has bit `v` set iff `u → v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    labels: Vec<Option<char>>,
    adj: Vec<u32>,
}

impl Digraph {
    pub fn new(labels: Vec<Option<char>>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::Schema(format!("at most {MAX_VERTICES} vertices, got {n}")));
        }
        let mut adj = vec![0u32; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Schema(format!("edge ({u}, {v}) outside {n} vertices")));
            }
            if u == v {
                return Err(Error::Schema(format!("loop at vertex {u}")));
            }
            adj[u] |= 1 << v;
        }
        Ok(Digraph { labels, adj })
    }

    /// An unlabeled graph.
    pub fn unlabeled(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(vec![None; n], edges)
    }

    pub(crate) fn from_parts(labels: Vec<Option<char>>, adj: Vec<u32>) -> Self {
        debug_assert_eq!(labels.len(), adj.len());
        Digraph { labels, adj }
    }

    /// The empty graph ε.
    pub fn empty() -> Self {
        Digraph { labels: Vec::new(), adj: Vec::new() }
    }

    /// A single vertex.
    pub fn vertex(label: Option<char>) -> Self {
        Digraph { labels: vec![label], adj: vec![0] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> Option<char> {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Option<char>] {
        &self.labels
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub(crate) fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |u| (0..n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.adj.iter().filter(|a| *a >> v & 1 == 1).count()
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Digraph {
        let n = self.len();
        let mut labels = vec![None; n];
        let mut adj = vec![0u32; n];
        for u in 0..n {
            labels[perm[u]] = self.labels[u];
            for v in 0..n {
                if self.has_edge(u, v) {
                    adj[perm[u]] |= 1 << perm[v];
                }
            }
        }
        Digraph { labels, adj }
    }

    /// The edge relation is transitive (and, being loop-free, a strict order).
    pub fn is_poset(&self) -> bool {
        let n = self.len();
        (0..n).all(|u| {
            (0..n).filter(|&v| self.has_edge(u, v)).all(|v| self.adj[v] & !self.adj[u] == 0)
        })
    }

    fn disjoint_union(&self, other: &Digraph, cross: bool) -> Digraph {
        let n1 = self.len();
        if n1 + other.len() > MAX_VERTICES {
            panic!("composition exceeds {MAX_VERTICES} vertices");
        }
        let right_all = if other.is_empty() { 0 } else { (u32::MAX >> (32 - other.len())) << n1 };
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut adj: Vec<u32> = self.adj.iter().map(|&a| if cross { a | right_all } else { a }).collect();
        adj.extend(other.adj.iter().map(|&a| a << n1));
        Digraph { labels, adj }
    }
}

/// `G1·G2`: the disjoint union plus every edge from `G1` to `G2`. The
/// vertices of `g1` come first.
pub fn seq(g1: &Digraph, g2: &Digraph) -> Digraph {
    g1.disjoint_union(g2, true)
}

/// `G1∥G2`: the disjoint union.
pub fn par(g1: &Digraph, g2: &Digraph) -> Digraph {
    g1.disjoint_union(g2, false)
}

fn order_by_degree(g: &Digraph) -> Vec<usize> {
    let mut vs: Vec<usize> = (0..g.len()).collect();
    vs.sort_by_key(|&v| std::cmp::Reverse(g.out_degree(v) + g.in_degree(v)));
    vs
}

/// Backtracking search for a label-preserving bijection `φ: V(from) → V(to)`
/// mapping each edge of `from` to an edge of `to`, and, if `reflect`, each
/// non-edge to a non-edge.
fn find_bijection(from: &Digraph, to: &Digraph, reflect: bool) -> Option<Vec<usize>> {
    let n = from.len();
    if n != to.len() {
        return None;
    }
    let mut la: Vec<_> = from.labels.clone();
    let mut lb: Vec<_> = to.labels.clone();
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb || from.edge_count() > to.edge_count() || (reflect && from.edge_count() != to.edge_count()) {
        return None;
    }
    let deg = |g: &Digraph| -> Vec<(usize, usize)> { (0..g.len()).map(|v| (g.out_degree(v), g.in_degree(v))).collect() };
    let (df, dt) = (deg(from), deg(to));
    let order = order_by_degree(from);
    let mut phi = vec![usize::MAX; n];
    let mut used = 0u32;

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        order: &[usize],
        from: &Digraph,
        to: &Digraph,
        df: &[(usize, usize)],
        dt: &[(usize, usize)],
        reflect: bool,
        phi: &mut [usize],
        used: &mut u32,
    ) -> bool {
        let Some(&u) = order.get(i) else { return true };
        for t in 0..to.len() {
            if *used >> t & 1 == 1 || from.labels[u] != to.labels[t] {
                continue;
            }
            let fits = if reflect { df[u] == dt[t] } else { df[u].0 <= dt[t].0 && df[u].1 <= dt[t].1 };
            if !fits {
                continue;
            }
            let consistent = order[..i].iter().all(|&w| {
                let tw = phi[w];
                let ok_out = !from.has_edge(u, w) || to.has_edge(t, tw);
                let ok_in = !from.has_edge(w, u) || to.has_edge(tw, t);
                let refl = !reflect || (from.has_edge(u, w) == to.has_edge(t, tw) && from.has_edge(w, u) == to.has_edge(tw, t));
                ok_out && ok_in && refl
            });
            if !consistent {
                continue;
            }
            phi[u] = t;
            *used |= 1 << t;
            if go(i + 1, order, from, to, df, dt, reflect, phi, used) {
                return true;
            }
            *used &= !(1 << t);
            phi[u] = usize::MAX;
        }
        false
    }

    go(0, &order, from, to, &df, &dt, reflect, &mut phi, &mut used).then_some(phi)
}

/// `g1 ⪯ g2`: some label-preserving vertex bijection `g2 → g1` maps every
/// edge of `g2` to an edge of `g1`. More edges means lower in the order.
pub fn subsumes(g1: &Digraph, g2: &Digraph) -> bool {
    find_bijection(g2, g1, false).is_some()
}

/// A witness bijection for [`subsumes`], from the vertices of `g2` to those of `g1`.
pub fn subsumption_witness(g1: &Digraph, g2: &Digraph) -> Option<Vec<usize>> {
    find_bijection(g2, g1, false)
}

/// Some label-preserving vertex bijection preserves and reflects edges.
pub fn isomorphic(g1: &Digraph, g2: &Digraph) -> bool {
    find_bijection(g1, g2, true).is_some()
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::term::render(self))
    }
}
