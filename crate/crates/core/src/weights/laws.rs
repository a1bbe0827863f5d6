//! The interchange laws I1–I7, the degeneracy conditions D1–D4 and the weak
//! Eckmann–Hilton argument, written once for any ordered bi-algebra.

use serde::Serialize;

use super::quantale::{BiQuantale, Table};
use crate::error::{Error, Result};
use crate::order::Preorder;
use crate::report::LawCheck;

/// A carrier with a partial order and two binary compositions.
///
/// Implemented by [`BiQuantale`], [`OrderedBiMagma`] and the lifted function
/// algebras of the convolution module, so the law checkers below run
/// unchanged on all of them.
pub trait OrderedBiAlgebra {
    type E: Clone;
    fn seq(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn par(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn le(&self, a: &Self::E, b: &Self::E) -> bool;
    fn is_bottom(&self, a: &Self::E) -> bool;
    fn unit_seq(&self) -> Option<Self::E>;
    fn unit_par(&self) -> Option<Self::E>;
    fn render(&self, a: &Self::E) -> String;
}

/// Arity of law Ik.
pub fn interchange_arity(k: usize) -> Result<usize> {
    match k {
        1 | 2 => Ok(2),
        3..=6 => Ok(3),
        7 => Ok(4),
        _ => Err(Error::InvalidLaw(k)),
    }
}

/// Arity of degeneracy condition Dk.
pub fn degeneracy_arity(k: usize) -> Result<usize> {
    match k {
        1 => Ok(2),
        2 | 3 => Ok(3),
        4 => Ok(4),
        _ => Err(Error::InvalidLaw(k)),
    }
}

/// The degeneracy condition whose failure lets law `k` fail in the base
/// structures while holding in the lift: the one asserting that the
/// left-hand side of Ik can be non-zero.
pub fn degeneracy_for_law(k: usize) -> Result<usize> {
    match k {
        1 | 2 => Ok(1),
        3 | 5 => Ok(2),
        4 | 6 => Ok(3),
        7 => Ok(4),
        _ => Err(Error::InvalidLaw(k)),
    }
}

/// The first tuple over `dom` (in lexicographic domain order) violating
/// law Ik, or `None` if the law holds on `dom`.
///
/// * I1: `a;b ≤ a|b`
/// * I2: `a;b ≤ b|a`
/// * I3: `a;(b|c) ≤ (a;b)|c`
/// * I4: `(a|b);c ≤ a|(b;c)`
/// * I5: `a;(b|c) ≤ b|(a;c)`
/// * I6: `(a|b);c ≤ (a;c)|b`
/// * I7: `(a|b);(c|d) ≤ (a;c)|(b;d)`
///
/// Here `;` is the sequential and `|` the parallel composition.
pub fn interchange_counterexample<A: OrderedBiAlgebra>(
    alg: &A,
    k: usize,
    dom: &[A::E],
) -> Result<Option<Vec<A::E>>> {
    interchange_arity(k)?;
    let t = |xs: &[&A::E]| Some(xs.iter().map(|&x| x.clone()).collect::<Vec<_>>());
    match k {
        1 | 2 => {
            for a in dom {
                for b in dom {
                    let lhs = alg.seq(a, b);
                    let rhs = if k == 1 { alg.par(a, b) } else { alg.par(b, a) };
                    if !alg.le(&lhs, &rhs) {
                        return Ok(t(&[a, b]));
                    }
                }
            }
        }
        3 | 5 => {
            for a in dom {
                for b in dom {
                    let ab = alg.seq(a, b);
                    for c in dom {
                        let lhs = alg.seq(a, &alg.par(b, c));
                        let rhs = if k == 3 { alg.par(&ab, c) } else { alg.par(b, &alg.seq(a, c)) };
                        if !alg.le(&lhs, &rhs) {
                            return Ok(t(&[a, b, c]));
                        }
                    }
                }
            }
        }
        4 | 6 => {
            for a in dom {
                for b in dom {
                    let ab = alg.par(a, b);
                    for c in dom {
                        let lhs = alg.seq(&ab, c);
                        let rhs = if k == 4 { alg.par(a, &alg.seq(b, c)) } else { alg.par(&alg.seq(a, c), b) };
                        if !alg.le(&lhs, &rhs) {
                            return Ok(t(&[a, b, c]));
                        }
                    }
                }
            }
        }
        _ => {
            for a in dom {
                for b in dom {
                    let ab = alg.par(a, b);
                    for c in dom {
                        let ac = alg.seq(a, c);
                        for d in dom {
                            let lhs = alg.seq(&ab, &alg.par(c, d));
                            let rhs = alg.par(&ac, &alg.seq(b, d));
                            if !alg.le(&lhs, &rhs) {
                                return Ok(t(&[a, b, c, d]));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The first tuple over `dom` witnessing degeneracy condition Dk, i.e. a
/// non-bottom value of
///
/// * D1: `a;b`
/// * D2: `a;(b|c)`
/// * D3: `(a|b);c`
/// * D4: `(a|b);(c|d)`
pub fn degeneracy_witness<A: OrderedBiAlgebra>(
    alg: &A,
    k: usize,
    dom: &[A::E],
) -> Result<Option<Vec<A::E>>> {
    degeneracy_arity(k)?;
    let t = |xs: &[&A::E]| Some(xs.iter().map(|&x| x.clone()).collect::<Vec<_>>());
    for a in dom {
        for b in dom {
            match k {
                1 => {
                    if !alg.is_bottom(&alg.seq(a, b)) {
                        return Ok(t(&[a, b]));
                    }
                }
                2 | 3 => {
                    for c in dom {
                        let v = if k == 2 { alg.seq(a, &alg.par(b, c)) } else { alg.seq(&alg.par(a, b), c) };
                        if !alg.is_bottom(&v) {
                            return Ok(t(&[a, b, c]));
                        }
                    }
                }
                _ => {
                    let ab = alg.par(a, b);
                    for c in dom {
                        for d in dom {
                            if !alg.is_bottom(&alg.seq(&ab, &alg.par(c, d))) {
                                return Ok(t(&[a, b, c, d]));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn render<A: OrderedBiAlgebra>(alg: &A, xs: &[A::E]) -> Vec<String> {
    xs.iter().map(|x| alg.render(x)).collect()
}

/// Law Ik as a [`LawCheck`] named `i1` … `i7`.
pub fn interchange_check<A: OrderedBiAlgebra>(alg: &A, k: usize, dom: &[A::E]) -> Result<LawCheck> {
    let cx = interchange_counterexample(alg, k, dom)?;
    Ok(LawCheck::from_counterexample(format!("i{k}"), cx.map(|w| render(alg, &w))))
}

/// Condition Dk as a [`LawCheck`] named `d1` … `d4`.
pub fn degeneracy_check<A: OrderedBiAlgebra>(alg: &A, k: usize, dom: &[A::E]) -> Result<LawCheck> {
    let w = degeneracy_witness(alg, k, dom)?;
    Ok(LawCheck::from_witness(format!("d{k}"), w.map(|w| render(alg, &w))))
}

impl OrderedBiAlgebra for BiQuantale {
    type E = usize;
    fn seq(&self, a: &usize, b: &usize) -> usize {
        self.seq.get(*a, *b)
    }
    fn par(&self, a: &usize, b: &usize) -> usize {
        self.par.get(*a, *b)
    }
    fn le(&self, a: &usize, b: &usize) -> bool {
        self.lattice.leq(*a, *b)
    }
    fn is_bottom(&self, a: &usize) -> bool {
        *a == self.lattice.bottom()
    }
    fn unit_seq(&self) -> Option<usize> {
        self.unit_seq
    }
    fn unit_par(&self) -> Option<usize> {
        self.unit_par
    }
    fn render(&self, a: &usize) -> String {
        self.name(*a).to_string()
    }
}

/// Law Ik over every tuple of `q`.
pub fn check_algebraic_interchange(q: &BiQuantale, k: usize) -> Result<LawCheck> {
    let dom: Vec<usize> = (0..q.len()).collect();
    interchange_check(q, k, &dom)
}

/// Condition Dk, searched exhaustively over `q`.
pub fn check_degeneracy(q: &BiQuantale, k: usize) -> Result<LawCheck> {
    let dom: Vec<usize> = (0..q.len()).collect();
    degeneracy_check(q, k, &dom)
}

/// A finite poset with two monotone compositions and units, not necessarily
/// a lattice. Used to test the Eckmann–Hilton argument on structures weaker
/// than quantales.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBiMagma {
    pub order: Preorder,
    pub seq: Table,
    pub par: Table,
    pub unit_seq: Option<usize>,
    pub unit_par: Option<usize>,
}

impl OrderedBiMagma {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Both compositions preserve the order in each argument.
    pub fn is_monotone(&self) -> bool {
        let n = self.len();
        let o = &self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                !o.leq(a, b)
                    || (0..n).all(|c| {
                        o.leq(self.seq.get(a, c), self.seq.get(b, c))
                            && o.leq(self.seq.get(c, a), self.seq.get(c, b))
                            && o.leq(self.par.get(a, c), self.par.get(b, c))
                            && o.leq(self.par.get(c, a), self.par.get(c, b))
                    })
            })
        })
    }

    /// Enumerates all ordered bi-magmas on `n ≤ 2` elements that are monotone
    /// and have a two-sided unit for each composition.
    pub fn enumerate_unital(n: usize) -> Vec<OrderedBiMagma> {
        assert!(n <= 2, "enumeration is only tractable for n ≤ 2");
        let orders: Vec<Preorder> = if n == 2 {
            vec![Preorder::discrete(2), Preorder::closure_of(2, [(0, 1)])]
        } else {
            vec![Preorder::discrete(n)]
        };
        let tables: Vec<Table> = (0..n.pow((n * n) as u32))
            .map(|mut code| {
                let mut cells = vec![0; n * n];
                for c in cells.iter_mut() {
                    *c = code % n;
                    code /= n;
                }
                Table::new(n, cells).expect("in range")
            })
            .collect();
        let unit_of = |t: &Table| (0..n).find(|&u| (0..n).all(|a| t.get(u, a) == a && t.get(a, u) == a));
        let mut out = Vec::new();
        for order in &orders {
            for s in &tables {
                let Some(us) = unit_of(s) else { continue };
                for p in &tables {
                    let Some(up) = unit_of(p) else { continue };
                    let m = OrderedBiMagma {
                        order: order.clone(),
                        seq: s.clone(),
                        par: p.clone(),
                        unit_seq: Some(us),
                        unit_par: Some(up),
                    };
                    if m.is_monotone() {
                        out.push(m);
                    }
                }
            }
        }
        out
    }
}

impl OrderedBiAlgebra for OrderedBiMagma {
    type E = usize;
    fn seq(&self, a: &usize, b: &usize) -> usize {
        self.seq.get(*a, *b)
    }
    fn par(&self, a: &usize, b: &usize) -> usize {
        self.par.get(*a, *b)
    }
    fn le(&self, a: &usize, b: &usize) -> bool {
        self.order.leq(*a, *b)
    }
    fn is_bottom(&self, a: &usize) -> bool {
        (0..self.len()).all(|b| self.order.leq(*a, b))
    }
    fn unit_seq(&self) -> Option<usize> {
        self.unit_seq
    }
    fn unit_par(&self) -> Option<usize> {
        self.unit_par
    }
    fn render(&self, a: &usize) -> String {
        a.to_string()
    }
}

/// What the weak Eckmann–Hilton argument established for one structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EHReport {
    /// `1_seq ≤ 1_par`, which I7 forces.
    pub unit_seq_le_unit_par: LawCheck,
    /// Whether `1_par ≤ 1_seq` also holds, so the units coincide.
    pub units_coincide: bool,
    /// I1–I6, checked only when the units coincide.
    pub small_laws: Option<Vec<LawCheck>>,
}

impl EHReport {
    pub fn all_hold(&self) -> bool {
        self.unit_seq_le_unit_par.holds
            && self.small_laws.as_ref().map_or(true, |v| v.iter().all(|c| c.holds))
    }
}

/// Runs the weak Eckmann–Hilton argument on `dom`.
///
/// Precondition: both units present and I7 holds on `dom`.
pub fn weak_eckmann_hilton<A: OrderedBiAlgebra>(alg: &A, dom: &[A::E]) -> Result<EHReport> {
    let us = alg.unit_seq().ok_or(Error::NotUnital)?;
    let up = alg.unit_par().ok_or(Error::NotUnital)?;
    if let Some(w) = interchange_counterexample(alg, 7, dom)? {
        return Err(Error::PreconditionFailed(format!(
            "i7 fails at ({})",
            render(alg, &w).join(", ")
        )));
    }
    let incl = if alg.le(&us, &up) {
        LawCheck::pass("unit-seq<=unit-par")
    } else {
        LawCheck::fail("unit-seq<=unit-par", vec![alg.render(&us), alg.render(&up)])
    };
    let units_coincide = alg.le(&up, &us);
    let small_laws = if units_coincide {
        Some((1..=6).map(|k| interchange_check(alg, k, dom)).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    Ok(EHReport { unit_seq_le_unit_par: incl, units_coincide, small_laws })
}

/// [`weak_eckmann_hilton`] over the whole carrier of `q`.
pub fn check_weak_eckmann_hilton(q: &BiQuantale) -> Result<EHReport> {
    let dom: Vec<usize> = (0..q.len()).collect();
    weak_eckmann_hilton(q, &dom)
}
