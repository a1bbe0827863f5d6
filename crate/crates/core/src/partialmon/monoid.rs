use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::Preorder;
use crate::relstruct::{Carrier, RelMagma, TernaryRelation};
use crate::report::{LawCheck, LawReport};

const UNDEF: u32 = u32::MAX;

/// A partial binary operation: a table defined exactly on the pairs in `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOp {
    n: usize,
    table: Vec<u32>,
    right: Vec<Vec<(u32, u32)>>,
    left: Vec<Vec<(u32, u32)>>,
    by_result: Vec<Vec<(u32, u32)>>,
}

impl PartialOp {
    /// Builds the operation from `(y, z, x)` entries meaning `y ⊗ z = x`.
    pub fn new(n: usize, entries: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut table = vec![UNDEF; n * n];
        for (y, z, x) in entries {
            if x >= n || y >= n || z >= n {
                return Err(Error::MalformedTable(format!("entry ({y}, {z}, {x}) outside carrier")));
            }
            let cell = &mut table[y * n + z];
            if *cell != UNDEF && *cell as usize != x {
                return Err(Error::MalformedTable(format!("two results for ({y}, {z})")));
            }
            *cell = x as u32;
        }
        let mut right = vec![Vec::new(); n];
        let mut left = vec![Vec::new(); n];
        let mut by_result = vec![Vec::new(); n];
        for y in 0..n {
            for z in 0..n {
                let x = table[y * n + z];
                if x != UNDEF {
                    right[y].push((z as u32, x));
                    left[z].push((y as u32, x));
                    by_result[x as usize].push((y as u32, z as u32));
                }
            }
        }
        Ok(PartialOp { n, table, right, left, by_result })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `y ⊗ z` if `D y z`.
    #[inline]
    pub fn get(&self, y: usize, z: usize) -> Option<usize> {
        let x = self.table[y * self.n + z];
        (x != UNDEF).then_some(x as usize)
    }

    #[inline]
    pub fn defined(&self, y: usize, z: usize) -> bool {
        self.table[y * self.n + z] != UNDEF
    }

    /// `y ⊗ z`, or [`Error::Undefined`] outside `D`.
    pub fn apply(&self, carrier: &Carrier, y: usize, z: usize) -> Result<usize> {
        self.get(y, z)
            .ok_or_else(|| Error::Undefined(carrier.name(y).to_string(), carrier.name(z).to_string()))
    }

    /// Pairs `(z, y ⊗ z)` with `D y z`, by increasing `z`.
    pub fn right_partners(&self, y: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.right[y].iter().map(|&(z, x)| (z as usize, x as usize))
    }

    /// Pairs `(y, y ⊗ z)` with `D y z`, by increasing `y`.
    pub fn left_partners(&self, z: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left[z].iter().map(|&(y, x)| (y as usize, x as usize))
    }

    /// Pairs `(y, z)` with `D y z` and `y ⊗ z = x`.
    pub fn decompositions(&self, x: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_result[x].iter().map(|&(y, z)| (y as usize, z as usize))
    }

    /// All `(y, z, y ⊗ z)` in lexicographic order of `(y, z)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.n).flat_map(move |y| self.right_partners(y).map(move |(z, x)| (y, z, x)))
    }
}

/// A partial monoid `(S, ⊗, D, E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMonoid {
    pub carrier: Arc<Carrier>,
    pub op: PartialOp,
    pub units: Vec<usize>,
}

impl PartialMonoid {
    pub fn new(carrier: Arc<Carrier>, op: PartialOp, mut units: Vec<usize>) -> Result<Self> {
        if op.size() != carrier.len() {
            return Err(Error::CarrierMismatch("operation and carrier sizes differ".into()));
        }
        if units.iter().any(|&e| e >= carrier.len()) {
            return Err(Error::MalformedTable("unit outside carrier".into()));
        }
        units.sort_unstable();
        units.dedup();
        Ok(PartialMonoid { carrier, op, units })
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }
}

/// A partial monoid with a preorder its operation preserves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreorderedPartialMonoid {
    pub monoid: PartialMonoid,
    pub preorder: Preorder,
}

fn first<T: Ord + Copy>(acc: &mut Option<T>, t: T) {
    if acc.map_or(true, |a| t < a) {
        *acc = Some(t);
    }
}

/// Kleene-equality associativity: `D x y ∧ D (x⊗y) z ⟺ D y z ∧ D x (y⊗z)`,
/// with equal results when defined. Returns the first violating `(x, y, z)`
/// per clause: (definedness, equality).
pub(crate) fn assoc_failures(op: &PartialOp) -> (Option<[usize; 3]>, Option<[usize; 3]>) {
    let (mut defined, mut equal) = (None, None);
    for (x, y, xy) in op.entries() {
        for (z, l) in op.right_partners(xy) {
            match op.get(y, z).and_then(|yz| op.get(x, yz)) {
                None => first(&mut defined, [x, y, z]),
                Some(r) if r != l => first(&mut equal, [x, y, z]),
                _ => {}
            }
        }
    }
    for (y, z, yz) in op.entries() {
        for (x, _) in op.left_partners(yz) {
            if op.get(x, y).and_then(|xy| op.get(xy, z)).is_none() {
                first(&mut defined, [x, y, z]);
            }
        }
    }
    (defined, equal)
}

/// The unit clauses: every `x` has a left unit `e ⊗ x = x` and a right unit
/// `x ⊗ e = x` in `E`, and `D e₁ e₂ ⇒ e₁ = e₂` on units.
pub(crate) fn unit_failures(op: &PartialOp, units: &[usize]) -> [Option<Vec<usize>>; 3] {
    let n = op.size();
    let left = (0..n).find(|&x| !units.iter().any(|&e| op.get(e, x) == Some(x))).map(|x| vec![x]);
    let right = (0..n).find(|&x| !units.iter().any(|&e| op.get(x, e) == Some(x))).map(|x| vec![x]);
    let distinct = units
        .iter()
        .flat_map(|&a| units.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| a != b && op.defined(a, b))
        .map(|(a, b)| vec![a, b]);
    [left, right, distinct]
}

/// Order preservation: `x ⪯ y ∧ D z x ⇒ D z y ∧ z⊗x ⪯ z⊗y` and the mirror
/// clause. Returns the first `(x, y, z)` for each side.
pub(crate) fn order_failures(op: &PartialOp, o: &Preorder) -> [Option<[usize; 3]>; 2] {
    let n = op.size();
    let (mut left, mut right) = (None, None);
    for x in 0..n {
        for y in (0..n).filter(|&y| o.leq(x, y)) {
            for (z, zx) in op.left_partners(x) {
                if !op.get(z, y).is_some_and(|zy| o.leq(zx, zy)) {
                    first(&mut left, [x, y, z]);
                }
            }
            for (z, xz) in op.right_partners(x) {
                if !op.get(y, z).is_some_and(|yz| o.leq(xz, yz)) {
                    first(&mut right, [x, y, z]);
                }
            }
        }
    }
    [left, right]
}

fn render(c: &Carrier, xs: &[usize]) -> Vec<String> {
    c.render(xs)
}

pub(crate) fn monoid_report(c: &Carrier, op: &PartialOp, units: &[usize], prefix: &str) -> LawReport {
    let mut r = LawReport::new();
    let (d, e) = assoc_failures(op);
    r.push(LawCheck::from_counterexample(format!("{prefix}assoc-defined"), d.map(|t| render(c, &t))));
    r.push(LawCheck::from_counterexample(format!("{prefix}assoc-equal"), e.map(|t| render(c, &t))));
    let names = ["unit-left", "unit-right", "unit-distinct"];
    for (name, f) in names.iter().zip(unit_failures(op, units)) {
        r.push(LawCheck::from_counterexample(format!("{prefix}{name}"), f.map(|w| render(c, &w))));
    }
    r
}

pub(crate) fn order_report(c: &Carrier, op: &PartialOp, o: &Preorder, prefix: &str) -> LawReport {
    let mut r = LawReport::new();
    let [l, rt] = order_failures(op, o);
    r.push(LawCheck::from_counterexample(format!("{prefix}order-left"), l.map(|t| render(c, &t))));
    r.push(LawCheck::from_counterexample(format!("{prefix}order-right"), rt.map(|t| render(c, &t))));
    r
}

/// The partial monoid axioms: associativity up to definedness and the three unit clauses.
pub fn check_partial_monoid(pm: &PartialMonoid) -> LawReport {
    monoid_report(&pm.carrier, &pm.op, &pm.units, "")
}

/// [`check_partial_monoid`] plus both order-preservation clauses.
pub fn check_preordered_partial_monoid(pm: &PreorderedPartialMonoid) -> LawReport {
    let mut r = check_partial_monoid(&pm.monoid);
    r.extend(order_report(&pm.monoid.carrier, &pm.monoid.op, &pm.preorder, ""));
    r
}

/// `R^x_{yz} ⟺ x = y ⊗ z ∧ D y z`, with the monoid's units.
pub fn to_relational(pm: &PartialMonoid) -> RelMagma {
    let rel = TernaryRelation::new(pm.len(), pm.op.entries().map(|(y, z, x)| (x, y, z))).expect("in range");
    RelMagma::new(pm.carrier.clone(), rel, Some(pm.units.clone())).expect("consistent sizes")
}

/// `R^x_{yz} ⟺ x ⪯ y ⊗ z ∧ D y z`, without units.
pub fn to_relational_preordered(pm: &PreorderedPartialMonoid) -> RelMagma {
    let m = &pm.monoid;
    let rel = preorder_encoded(&m.op, &pm.preorder);
    RelMagma::new(m.carrier.clone(), rel, None).expect("consistent sizes")
}

pub(crate) fn preorder_encoded(op: &PartialOp, o: &Preorder) -> TernaryRelation {
    let triples = op.entries().flat_map(|(y, z, yz)| o.below(yz).map(move |x| (x, y, z))).collect::<Vec<_>>();
    TernaryRelation::new(op.size(), triples).expect("in range")
}

pub(crate) fn equality_encoded(op: &PartialOp) -> TernaryRelation {
    TernaryRelation::new(op.size(), op.entries().map(|(y, z, x)| (x, y, z))).expect("in range")
}
