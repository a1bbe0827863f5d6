use std::fmt;

use super::digraph::{par, seq, subsumes, Digraph};

/// Graphs up to this many vertices are canonized by trying every
/// label-sorted permutation; larger ones go through partition refinement.
pub const EXHAUSTIVE_LIMIT: usize = 7;

/// An isomorphism class of digraphs, held as its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphType(Digraph);

impl GraphType {
    pub fn representative(&self) -> &Digraph {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The type of the empty graph.
    pub fn empty() -> Self {
        GraphType(Digraph::empty())
    }

    /// The type of a single vertex.
    pub fn vertex(label: Option<char>) -> Self {
        GraphType(Digraph::vertex(label))
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Ordered cells of vertices; a canonical ordering places cell `i` before cell `i + 1`.
fn label_cells(g: &Digraph) -> Vec<Vec<usize>> {
    let mut vs: Vec<usize> = (0..g.len()).collect();
    vs.sort_by_key(|&v| g.label(v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in vs {
        match cells.last_mut() {
            Some(c) if g.label(c[0]) == g.label(v) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    cells
}

/// Colour refinement: a vertex's colour is repeatedly replaced by its colour
/// together with the sorted colours of its out- and in-neighbours, until
/// the number of colours is stable. Cells are ordered by colour, so the
/// result does not depend on vertex names.
fn refined_cells(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut colour = vec![0usize; n];
    for (i, cell) in label_cells(g).iter().enumerate() {
        for &v in cell {
            colour[v] = i;
        }
    }
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut outs: Vec<usize> = (0..n).filter(|&w| g.has_edge(v, w)).map(|w| colour[w]).collect();
                let mut ins: Vec<usize> = (0..n).filter(|&w| g.has_edge(w, v)).map(|w| colour[w]).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                (colour[v], outs, ins)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        let before = colour.iter().copied().max().map_or(0, |m| m + 1);
        colour = next;
        if distinct.len() == before {
            break;
        }
    }
    let k = colour.iter().copied().max().map_or(0, |m| m + 1);
    let mut cells = vec![Vec::new(); k];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    cells
}

/// Adjacency rows of `g` with vertex `order[i]` placed at position `i`.
fn rows_in_order(g: &Digraph, order: &[usize]) -> Vec<u32> {
    order
        .iter()
        .map(|&u| order.iter().enumerate().filter(|&(_, &v)| g.has_edge(u, v)).fold(0u32, |acc, (j, _)| acc | 1 << j))
        .collect()
}

/// Minimizes the adjacency rows over all orderings that respect the cells.
fn minimize(g: &Digraph, cells: &[Vec<usize>]) -> Digraph {
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    let mut order: Vec<usize> = Vec::with_capacity(g.len());

    fn go(
        g: &Digraph,
        cells: &[Vec<usize>],
        ci: usize,
        used: &mut Vec<bool>,
        order: &mut Vec<usize>,
        best: &mut Option<(Vec<u32>, Vec<usize>)>,
    ) {
        if ci == cells.len() {
            let rows = rows_in_order(g, order);
            if best.as_ref().map_or(true, |(b, _)| rows < *b) {
                *best = Some((rows, order.clone()));
            }
            return;
        }
        let cell = &cells[ci];
        let placed = cell.iter().filter(|&&v| used[v]).count();
        if placed == cell.len() {
            go(g, cells, ci + 1, used, order, best);
            return;
        }
        for &v in cell {
            if used[v] {
                continue;
            }
            used[v] = true;
            order.push(v);
            go(g, cells, ci, used, order, best);
            order.pop();
            used[v] = false;
        }
    }

    let mut used = vec![false; g.len()];
    go(g, cells, 0, &mut used, &mut order, &mut best);
    let (_, order) = best.expect("at least one ordering");
    let mut perm = vec![0; g.len()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    g.permute(&perm)
}

/// The canonical representative of `g`'s isomorphism class: labels sorted,
/// then the lexicographically least adjacency rows.
pub fn canonical(g: &Digraph) -> GraphType {
    let cells = if g.len() <= EXHAUSTIVE_LIMIT { label_cells(g) } else { refined_cells(g) };
    GraphType(minimize(g, &cells))
}

/// `[G1]·[G2] = [G1·G2]`.
pub fn type_seq(s: &GraphType, t: &GraphType) -> GraphType {
    canonical(&seq(&s.0, &t.0))
}

/// `[G1]∥[G2] = [G1∥G2]`.
pub fn type_par(s: &GraphType, t: &GraphType) -> GraphType {
    canonical(&par(&s.0, &t.0))
}

/// `[G1] ⪯ [G2]`, decided on the representatives.
pub fn type_subsumes(s: &GraphType, t: &GraphType) -> bool {
    subsumes(&s.0, &t.0)
}
