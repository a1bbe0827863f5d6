use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monoid::{equality_encoded, monoid_report, order_report, preorder_encoded, PartialOp};
use crate::error::{Error, Result};
use crate::order::Preorder;
use crate::relstruct::{Carrier, RelBiMagma};
use crate::report::{LawCheck, LawReport};

/// A partial interchange monoid: two preordered partial monoids on one
/// carrier sharing the preorder, with `E_par ⊆ E_seq` and law (pi7).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialInterchangeMonoid {
    pub carrier: Arc<Carrier>,
    pub preorder: Preorder,
    pub seq: PartialOp,
    pub par: PartialOp,
    pub units_seq: Vec<usize>,
    pub units_par: Vec<usize>,
}

impl PartialInterchangeMonoid {
    pub fn new(
        carrier: Arc<Carrier>,
        preorder: Preorder,
        seq: PartialOp,
        par: PartialOp,
        mut units_seq: Vec<usize>,
        mut units_par: Vec<usize>,
    ) -> Result<Self> {
        let n = carrier.len();
        if preorder.len() != n || seq.size() != n || par.size() != n {
            return Err(Error::CarrierMismatch("component sizes differ from the carrier".into()));
        }
        if units_seq.iter().chain(&units_par).any(|&e| e >= n) {
            return Err(Error::MalformedTable("unit outside carrier".into()));
        }
        units_seq.sort_unstable();
        units_seq.dedup();
        units_par.sort_unstable();
        units_par.dedup();
        Ok(PartialInterchangeMonoid { carrier, preorder, seq, par, units_seq, units_par })
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// The unit shared by both compositions, if there is exactly one.
    pub fn shared_unit(&self) -> Result<usize> {
        if self.units_seq.len() != 1 {
            return Err(Error::MultipleUnits(self.units_seq.len()));
        }
        if self.units_par != self.units_seq {
            return Err(Error::PreconditionFailed("sequential and parallel units differ".into()));
        }
        Ok(self.units_seq[0])
    }
}

/// The first `(w, x, y, z)` violating (pi7):
/// `D_p w x ∧ D_s (w∥x) (y∥z) ∧ D_p y z ⇒ D_s w y ∧ D_s x z ∧ D_p (w⊗y) (x⊗z)`
/// and `(w∥x)⊗(y∥z) ⪯ (w⊗y)∥(x⊗z)`.
fn pi7_failure(p: &PartialInterchangeMonoid) -> Option<[usize; 4]> {
    let (s, t, o) = (&p.seq, &p.par, &p.preorder);
    let mut best: Option<[usize; 4]> = None;
    for (w, x, wx) in t.entries() {
        for (r, lhs) in s.right_partners(wx) {
            for (y, z) in t.decompositions(r) {
                let ok = match (s.get(w, y), s.get(x, z)) {
                    (Some(wy), Some(xz)) => t.get(wy, xz).is_some_and(|rhs| o.leq(lhs, rhs)),
                    _ => false,
                };
                if !ok && best.map_or(true, |b| [w, x, y, z] < b) {
                    best = Some([w, x, y, z]);
                }
            }
        }
    }
    best
}

/// All clauses of a partial interchange monoid: the partial monoid and
/// order-preservation axioms for each composition (prefixed `seq-` and
/// `par-`), `E_par ⊆ E_seq`, and (pi7).
pub fn check_pim(p: &PartialInterchangeMonoid) -> LawReport {
    let c = &p.carrier;
    let mut r = LawReport::new();
    r.extend(monoid_report(c, &p.seq, &p.units_seq, "seq-"));
    r.extend(order_report(c, &p.seq, &p.preorder, "seq-"));
    r.extend(monoid_report(c, &p.par, &p.units_par, "par-"));
    r.extend(order_report(c, &p.par, &p.preorder, "par-"));
    let missing: Vec<usize> = p.units_par.iter().copied().filter(|e| !p.units_seq.contains(e)).collect();
    r.push(if missing.is_empty() {
        LawCheck::pass("units-par⊆units-seq")
    } else {
        LawCheck::fail("units-par⊆units-seq", c.render(&missing))
    });
    r.push(LawCheck::from_counterexample("pi7", pi7_failure(p).map(|t| c.render(&t))));
    r
}

/// The small interchange law `k` (1–6) of a partial interchange monoid with
/// a single shared unit, where `;` is the sequential and `|` the parallel
/// composition:
///
/// 1. `D_s x y ⇒ D_p x y ∧ x;y ⪯ x|y`
/// 2. `D_s x y ⇒ D_p y x ∧ x;y ⪯ y|x`
/// 3. `D_s x (y|z) ∧ D_p y z ⇒ D_s x y ∧ D_p (x;y) z ∧ x;(y|z) ⪯ (x;y)|z`
/// 4. `D_p x y ∧ D_s (x|y) z ⇒ D_s y z ∧ D_p x (y;z) ∧ (x|y);z ⪯ x|(y;z)`
/// 5. `D_s x (y|z) ∧ D_p y z ⇒ D_s x z ∧ D_p y (x;z) ∧ x;(y|z) ⪯ y|(x;z)`
/// 6. `D_p x y ∧ D_s (x|y) z ⇒ D_s x z ∧ D_p (x;z) y ∧ (x|y);z ⪯ (x;z)|y`
pub fn check_small_partial_interchange(p: &PartialInterchangeMonoid, k: usize) -> Result<LawCheck> {
    if !(1..=6).contains(&k) {
        return Err(Error::InvalidLaw(k));
    }
    p.shared_unit()?;
    let (s, t, o) = (&p.seq, &p.par, &p.preorder);
    let le = |a: Option<usize>, b: Option<usize>| matches!((a, b), (Some(a), Some(b)) if o.leq(a, b));
    let mut best: Option<Vec<usize>> = None;
    let mut note = |v: Vec<usize>| {
        if best.as_ref().map_or(true, |b| v < *b) {
            best = Some(v);
        }
    };
    match k {
        1 | 2 => {
            for (x, y, xy) in s.entries() {
                let rhs = if k == 1 { t.get(x, y) } else { t.get(y, x) };
                if !le(Some(xy), rhs) {
                    note(vec![x, y]);
                }
            }
        }
        3 | 5 => {
            for (y, z, yz) in t.entries() {
                for (x, lhs) in s.left_partners(yz) {
                    let rhs = if k == 3 {
                        s.get(x, y).and_then(|xy| t.get(xy, z))
                    } else {
                        s.get(x, z).and_then(|xz| t.get(y, xz))
                    };
                    if !le(Some(lhs), rhs) {
                        note(vec![x, y, z]);
                    }
                }
            }
        }
        _ => {
            for (x, y, xy) in t.entries() {
                for (z, lhs) in s.right_partners(xy) {
                    let rhs = if k == 4 {
                        s.get(y, z).and_then(|yz| t.get(x, yz))
                    } else {
                        s.get(x, z).and_then(|xz| t.get(xz, y))
                    };
                    if !le(Some(lhs), rhs) {
                        note(vec![x, y, z]);
                    }
                }
            }
        }
    }
    Ok(LawCheck::from_counterexample(format!("small{k}"), best.map(|w| p.carrier.render(&w))))
}

/// How a partial composition is read as a ternary relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    /// `R^x_{yz} ⟺ x = y ⊗ z ∧ D y z`
    Equality,
    /// `R^x_{yz} ⟺ x ⪯ y ⊗ z ∧ D y z`
    Preorder,
}

/// The relational bi-magma of `p`: the sequential relation by equality,
/// the parallel one by `par_encoding`. Both unit sets are `{e}`.
///
/// Requires a single shared unit; partial interchange monoids with several
/// units are rejected.
pub fn pim_to_bimagma(p: &PartialInterchangeMonoid, par_encoding: Encoding) -> Result<RelBiMagma> {
    let e = p.shared_unit()?;
    let seq = equality_encoded(&p.seq);
    let par = match par_encoding {
        Encoding::Equality => equality_encoded(&p.par),
        Encoding::Preorder => preorder_encoded(&p.par, &p.preorder),
    };
    RelBiMagma::new(p.carrier.clone(), seq, par, Some(vec![e]), Some(vec![e]))
}

/// The relational interchange semigroup of `p`: sequential relation by
/// equality, parallel relation by the preorder.
pub fn pim_to_interchange_semigroup(p: &PartialInterchangeMonoid) -> Result<RelBiMagma> {
    pim_to_bimagma(p, Encoding::Preorder)
}

/// No element lies strictly below a sequential unit.
pub fn check_positive(p: &PartialInterchangeMonoid) -> LawCheck {
    let o = &p.preorder;
    let w = p
        .units_seq
        .iter()
        .flat_map(|&e| (0..p.len()).map(move |x| (x, e)))
        .filter(|&(x, e)| o.lt(x, e))
        .min();
    LawCheck::from_counterexample("positive", w.map(|(x, e)| p.carrier.render(&[x, e])))
}

/// `D_s y1 y2 ∧ x ⪯ y1;y2` implies `x = x1;x2` for some `x1 ⪯ y1`, `x2 ⪯ y2`
/// with `D_s x1 x2`. The witness is `(x, y1, y2)`.
pub fn check_serially_decomposable(p: &PartialInterchangeMonoid) -> LawCheck {
    let (s, o) = (&p.seq, &p.preorder);
    let mut best: Option<[usize; 3]> = None;
    for (y1, y2, y) in s.entries() {
        for x in o.below(y) {
            let ok = s.decompositions(x).any(|(x1, x2)| o.leq(x1, y1) && o.leq(x2, y2));
            if !ok && best.map_or(true, |b| [x, y1, y2] < b) {
                best = Some([x, y1, y2]);
            }
        }
    }
    LawCheck::from_counterexample("serially-decomposable", best.map(|t| p.carrier.render(&t)))
}
