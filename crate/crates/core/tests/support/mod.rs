//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use convalg::graphmodels::Digraph;
use convalg::relstruct::{RelBiMagma, TernaryRelation};

/// All `k`-tuples over `0..n` in lexicographic order.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// A relation as a membership cube: `r[x][y][z]` iff `R^x_{yz}`.
pub type Cube = Vec<Vec<Vec<bool>>>;

pub fn cube(r: &TernaryRelation) -> Cube {
    let n = r.size();
    (0..n).map(|x| (0..n).map(|y| (0..n).map(|z| r.contains(x, y, z)).collect()).collect()).collect()
}

/// A term over variables, sequential and parallel composition.
#[derive(Clone, Copy)]
pub enum T {
    V(usize),
    S(&'static T, &'static T),
    P(&'static T, &'static T),
}

/// `(lhs, rhs, variable count)` of interchange law `k`, read as `lhs ≤ rhs`.
pub fn interchange_terms(k: usize) -> (T, T, usize) {
    use T::*;
    const A: T = V(0);
    const B: T = V(1);
    const C: T = V(2);
    const D: T = V(3);
    match k {
        1 => (S(&A, &B), P(&A, &B), 2),
        2 => (S(&A, &B), P(&B, &A), 2),
        3 => (S(&A, &P(&B, &C)), P(&S(&A, &B), &C), 3),
        4 => (S(&P(&A, &B), &C), P(&A, &S(&B, &C)), 3),
        5 => (S(&A, &P(&B, &C)), P(&B, &S(&A, &C)), 3),
        6 => (S(&P(&A, &B), &C), P(&S(&A, &C), &B), 3),
        7 => (S(&P(&A, &B), &P(&C, &D)), P(&S(&A, &C), &S(&B, &D)), 4),
        _ => panic!("no interchange law {k}"),
    }
}

/// The set a term denotes when each relation is read as a multioperation.
pub fn eval_set(t: &T, vars: &[usize], s: &Cube, p: &Cube) -> BTreeSet<usize> {
    let n = s.len();
    match t {
        T::V(i) => BTreeSet::from([vars[*i]]),
        T::S(a, b) | T::P(a, b) => {
            let r = if matches!(t, T::S(..)) { s } else { p };
            let (l, rr) = (eval_set(a, vars, s, p), eval_set(b, vars, s, p));
            (0..n).filter(|&x| l.iter().any(|&y| rr.iter().any(|&z| r[x][y][z]))).collect()
        }
    }
}

/// The value of a term under two binary operations.
pub fn eval_elem(t: &T, vars: &[usize], s: &dyn Fn(usize, usize) -> usize, p: &dyn Fn(usize, usize) -> usize) -> usize {
    match t {
        T::V(i) => vars[*i],
        T::S(a, b) => s(eval_elem(a, vars, s, p), eval_elem(b, vars, s, p)),
        T::P(a, b) => p(eval_elem(a, vars, s, p), eval_elem(b, vars, s, p)),
    }
}

/// The least `(x, vars…)` with `x` in the left side of RIk but not the right.
pub fn ri_oracle(b: &RelBiMagma, k: usize) -> Option<Vec<usize>> {
    let (s, p) = (cube(&b.seq), cube(&b.par));
    let (lhs, rhs, vars) = interchange_terms(k);
    let mut best: Option<Vec<usize>> = None;
    for vs in tuples(b.len(), vars) {
        let l = eval_set(&lhs, &vs, &s, &p);
        let r = eval_set(&rhs, &vs, &s, &p);
        if let Some(&x) = l.difference(&r).next() {
            let t = [vec![x], vs].concat();
            if best.as_ref().map_or(true, |b| t < *b) {
                best = Some(t);
            }
        }
    }
    best
}

/// Whether the left side of the law behind RDk is non-empty somewhere.
pub fn rd_oracle(b: &RelBiMagma, k: usize) -> bool {
    let (s, p) = (cube(&b.seq), cube(&b.par));
    let law = [1, 3, 4, 7][k - 1];
    let (lhs, _, vars) = interchange_terms(law);
    tuples(b.len(), vars).iter().any(|vs| !eval_set(&lhs, vs, &s, &p).is_empty())
}

/// `g1 ⪯ g2` by trying every bijection.
pub fn subsumes_oracle(g1: &Digraph, g2: &Digraph) -> bool {
    let n = g1.len();
    n == g2.len()
        && permutations(n).iter().any(|p| {
            (0..n).all(|v| g2.label(v) == g1.label(p[v])) && g2.edges().all(|(u, v)| g1.has_edge(p[u], p[v]))
        })
}

pub fn iso_oracle(g1: &Digraph, g2: &Digraph) -> bool {
    let n = g1.len();
    let e2: BTreeSet<(usize, usize)> = g2.edges().collect();
    n == g2.len()
        && permutations(n).iter().any(|p| {
            (0..n).all(|v| g1.label(v) == g2.label(p[v]))
                && e2 == g1.edges().map(|(u, v)| (p[u], p[v])).collect::<BTreeSet<_>>()
        })
}
