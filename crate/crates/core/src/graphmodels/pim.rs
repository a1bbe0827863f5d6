use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::order::Preorder;
use crate::partialmon::{PartialInterchangeMonoid, PartialOp};
use crate::relstruct::Carrier;

/// Pool sizes above this are refused by [`build_graph_pim`].
pub const MAX_POOL: usize = 4;

/// A graph whose vertices are drawn from the pool `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct PoolGraph {
    vertices: u32,
    labels: Vec<Option<char>>,
    adj: Vec<u32>,
}

impl PoolGraph {
    fn name(&self) -> String {
        let n = self.labels.len();
        let vs: Vec<String> = (0..n)
            .filter(|&v| self.vertices >> v & 1 == 1)
            .map(|v| format!("{v}{}", self.labels[v].map_or(String::new(), String::from)))
            .collect();
        let es: Vec<String> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| self.adj[u] >> v & 1 == 1).map(move |v| format!("{u}>{v}")))
            .collect();
        if es.is_empty() {
            format!("{{{}}}", vs.join(","))
        } else {
            format!("{{{} | {}}}", vs.join(","), es.join(","))
        }
    }

    fn is_poset(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|u| (0..n).filter(|&v| self.adj[u] >> v & 1 == 1).all(|v| self.adj[v] & !self.adj[u] == 0))
    }

    fn compose(&self, other: &PoolGraph, cross: bool) -> PoolGraph {
        let labels = self.labels.iter().zip(&other.labels).map(|(a, b)| a.or(*b)).collect();
        let adj = self
            .adj
            .iter()
            .zip(&other.adj)
            .enumerate()
            .map(|(u, (a, b))| {
                let c = if cross && self.vertices >> u & 1 == 1 { other.vertices } else { 0 };
                a | b | c
            })
            .collect();
        PoolGraph { vertices: self.vertices | other.vertices, labels, adj }
    }
}

fn enumerate(n: usize, labels: &[char], posets_only: bool) -> Vec<PoolGraph> {
    let choices: Vec<Option<char>> = if labels.is_empty() { vec![None] } else { labels.iter().copied().map(Some).collect() };
    let mut out = Vec::new();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for vertices in masks {
        let vs: Vec<usize> = (0..n).filter(|&v| vertices >> v & 1 == 1).collect();
        let slots: Vec<(usize, usize)> =
            vs.iter().flat_map(|&u| vs.iter().filter(move |&&v| v != u).map(move |&v| (u, v))).collect();
        let labelings = choices.len().pow(vs.len() as u32);
        for lab in 0..labelings {
            let mut ls = vec![None; n];
            let mut code = lab;
            for &v in &vs {
                ls[v] = choices[code % choices.len()];
                code /= choices.len();
            }
            for edges in 0u64..1 << slots.len() {
                let mut adj = vec![0u32; n];
                for (i, &(u, v)) in slots.iter().enumerate() {
                    if edges >> i & 1 == 1 {
                        adj[u] |= 1 << v;
                    }
                }
                let g = PoolGraph { vertices, labels: ls.clone(), adj };
                if !posets_only || g.is_poset() {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Concrete graphs over the vertex pool `0..n` as a partial interchange
/// monoid. Both compositions are defined on graphs with disjoint vertex
/// sets: serial composition adds every edge from the left graph to the
/// right one, parallel composition adds none. The empty graph is the
/// shared unit.
///
/// The preorder is subsumption witnessed by the identity on vertices:
/// `x ⪯ y` iff both have the same vertices and labels and every edge of
/// `y` is an edge of `x`. Elements are named like `{0a,1b | 0>1}`.
pub fn build_graph_pim(n: usize, labels: &[char], posets_only: bool) -> Result<PartialInterchangeMonoid> {
    if n > MAX_POOL {
        return Err(Error::Schema(format!("graph pools hold at most {MAX_POOL} vertices")));
    }
    let mut labels = labels.to_vec();
    labels.sort_unstable();
    labels.dedup();
    let graphs = enumerate(n, &labels, posets_only);
    let index: HashMap<&PoolGraph, usize> = graphs.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut seq = Vec::new();
    let mut par = Vec::new();
    for (y, gy) in graphs.iter().enumerate() {
        for (z, gz) in graphs.iter().enumerate() {
            if gy.vertices & gz.vertices == 0 {
                seq.push((y, z, index[&gy.compose(gz, true)]));
                par.push((y, z, index[&gy.compose(gz, false)]));
            }
        }
    }
    let m = graphs.len();
    let preorder = Preorder::from_fn(m, |x, y| {
        let (gx, gy) = (&graphs[x], &graphs[y]);
        gx.vertices == gy.vertices && gx.labels == gy.labels && gx.adj.iter().zip(&gy.adj).all(|(a, b)| b & !a == 0)
    })?;
    let carrier = Carrier::new(graphs.iter().map(PoolGraph::name))?;
    PartialInterchangeMonoid::new(carrier, preorder, PartialOp::new(m, seq)?, PartialOp::new(m, par)?, vec![0], vec![0])
}
