use super::lattice::FiniteLattice;
use crate::error::{Error, Result};
use crate::report::{LawCheck, LawReport};

/// A dense binary operation table on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Table {
    n: usize,
    cells: Vec<usize>,
}

impl Table {
    /// Row-major cells; `cells[a * n + b]` is `a • b`.
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "expected {} cells, found {}",
                n * n,
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|&&c| c >= n) {
            return Err(Error::MalformedTable(format!("cell value {bad} outside carrier of size {n}")));
        }
        Ok(Table { n, cells })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(a, b));
            }
        }
        Table::new(n, cells).expect("from_fn produced an out-of-range cell")
    }

    pub fn constant(n: usize, c: usize) -> Self {
        Self::from_fn(n, |_, _| c)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.get(a, b) == self.get(b, a)))
    }
}

/// An idempotent semiring view: addition, multiplication, zero and an optional one.
///
/// Convolution is generic over this trait so the same code serves quantales,
/// the two retracts of a bi-quantale, and Kleene algebra tables.
pub trait Dioid {
    fn size(&self) -> usize;
    fn zero(&self) -> usize;
    fn one(&self) -> Option<usize>;
    fn add(&self, a: usize, b: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool {
        self.add(a, b) == b
    }
}

/// A finite (pre)quantale: a finite lattice with a composition and an optional unit.
///
/// Construction only checks that the table fits the carrier; the algebraic
/// laws are what [`check_quantale_laws`] verifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuantale {
    pub lattice: FiniteLattice,
    pub comp: Table,
    pub unit: Option<usize>,
}

impl FiniteQuantale {
    pub fn new(lattice: FiniteLattice, comp: Table, unit: Option<usize>) -> Result<Self> {
        if comp.size() != lattice.len() {
            return Err(Error::MalformedTable(format!(
                "table over {} elements for a carrier of {}",
                comp.size(),
                lattice.len()
            )));
        }
        if let Some(u) = unit {
            if u >= lattice.len() {
                return Err(Error::MalformedTable(format!("unit index {u} outside carrier")));
            }
        }
        Ok(FiniteQuantale { lattice, comp, unit })
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        self.lattice.name(a)
    }

    #[inline]
    pub fn comp(&self, a: usize, b: usize) -> usize {
        self.comp.get(a, b)
    }

    /// The element acting as a two-sided unit, if any.
    pub fn find_unit(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&u| (0..n).all(|a| self.comp(u, a) == a && self.comp(a, u) == a))
    }
}

impl Dioid for FiniteQuantale {
    fn size(&self) -> usize {
        self.len()
    }
    fn zero(&self) -> usize {
        self.lattice.bottom()
    }
    fn one(&self) -> Option<usize> {
        self.unit
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.comp(a, b)
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }
}

fn names(q: &FiniteLattice, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| q.name(x).to_string()).collect()
}

/// Checks associativity, the unit laws (when a unit is declared), binary-join
/// preservation on each side and bottom annihilation on each side.
///
/// On a finite lattice the last two together amount to preserving all sups.
pub fn check_quantale_laws(q: &FiniteQuantale) -> LawReport {
    let l = &q.lattice;
    let n = q.len();
    let z = l.bottom();
    let first = |pred: &dyn Fn(usize, usize, usize) -> bool| -> Option<Vec<String>> {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !pred(a, b, c) {
                        return Some(names(l, &[a, b, c]));
                    }
                }
            }
        }
        None
    };
    let mut r = LawReport::new();
    r.push(LawCheck::from_counterexample(
        "assoc",
        first(&|a, b, c| q.comp(q.comp(a, b), c) == q.comp(a, q.comp(b, c))),
    ));
    if let Some(u) = q.unit {
        let left = (0..n).find(|&a| q.comp(u, a) != a).map(|a| names(l, &[a]));
        let right = (0..n).find(|&a| q.comp(a, u) != a).map(|a| names(l, &[a]));
        r.push(LawCheck::from_counterexample("unit-left", left));
        r.push(LawCheck::from_counterexample("unit-right", right));
    }
    r.push(LawCheck::from_counterexample(
        "join-left",
        first(&|a, b, c| q.comp(a, l.join(b, c)) == l.join(q.comp(a, b), q.comp(a, c))),
    ));
    r.push(LawCheck::from_counterexample(
        "join-right",
        first(&|a, b, c| q.comp(l.join(a, b), c) == l.join(q.comp(a, c), q.comp(b, c))),
    ));
    r.push(LawCheck::from_counterexample(
        "bottom-left",
        (0..n).find(|&a| q.comp(z, a) != z).map(|a| names(l, &[a])),
    ));
    r.push(LawCheck::from_counterexample(
        "bottom-right",
        (0..n).find(|&a| q.comp(a, z) != z).map(|a| names(l, &[a])),
    ));
    r
}

/// `a⋆`: the least fixpoint of `y ↦ 1 ∨ a • y`, reached by iteration from bottom.
pub fn quantale_star(q: &FiniteQuantale, a: usize) -> Result<usize> {
    let one = q.unit.ok_or(Error::NotUnital)?;
    let mut y = q.lattice.bottom();
    loop {
        let next = q.lattice.join(one, q.comp(a, y));
        if next == y {
            return Ok(y);
        }
        y = next;
    }
}

/// A finite lattice with two compositions, `seq` and `par`, each with an
/// optional unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiQuantale {
    pub lattice: FiniteLattice,
    pub seq: Table,
    pub par: Table,
    pub unit_seq: Option<usize>,
    pub unit_par: Option<usize>,
}

impl BiQuantale {
    pub fn new(
        lattice: FiniteLattice,
        seq: Table,
        par: Table,
        unit_seq: Option<usize>,
        unit_par: Option<usize>,
    ) -> Result<Self> {
        let s = FiniteQuantale::new(lattice, seq, unit_seq)?;
        let p = FiniteQuantale::new(s.lattice.clone(), par, unit_par)?;
        Ok(BiQuantale { lattice: s.lattice, seq: s.comp, par: p.comp, unit_seq, unit_par })
    }

    /// Both compositions equal to the composition of `q`.
    pub fn diagonal(q: &FiniteQuantale) -> Self {
        BiQuantale {
            lattice: q.lattice.clone(),
            seq: q.comp.clone(),
            par: q.comp.clone(),
            unit_seq: q.unit,
            unit_par: q.unit,
        }
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        self.lattice.name(a)
    }

    pub fn seq_retract(&self) -> FiniteQuantale {
        FiniteQuantale { lattice: self.lattice.clone(), comp: self.seq.clone(), unit: self.unit_seq }
    }

    pub fn par_retract(&self) -> FiniteQuantale {
        FiniteQuantale { lattice: self.lattice.clone(), comp: self.par.clone(), unit: self.unit_par }
    }

    /// A [`Dioid`] view of one composition.
    pub fn view(&self, which: crate::Which) -> Retract<'_> {
        Retract { q: self, which }
    }
}

/// One composition of a [`BiQuantale`] seen as a dioid.
#[derive(Debug, Clone, Copy)]
pub struct Retract<'a> {
    q: &'a BiQuantale,
    which: crate::Which,
}

impl Dioid for Retract<'_> {
    fn size(&self) -> usize {
        self.q.len()
    }
    fn zero(&self) -> usize {
        self.q.lattice.bottom()
    }
    fn one(&self) -> Option<usize> {
        match self.which {
            crate::Which::Seq => self.q.unit_seq,
            crate::Which::Par => self.q.unit_par,
        }
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.q.lattice.join(a, b)
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match self.which {
            crate::Which::Seq => self.q.seq.get(a, b),
            crate::Which::Par => self.q.par.get(a, b),
        }
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.q.lattice.leq(a, b)
    }
}

/// The Boolean quantale `({0,1}, ≤, ∧, 1)`.
pub fn boolean_quantale() -> FiniteQuantale {
    let l = FiniteLattice::boolean();
    let comp = Table::from_fn(2, |a, b| a & b);
    FiniteQuantale::new(l, comp, Some(1)).expect("boolean quantale")
}

/// The Boolean bi-quantale: both compositions are meet, shared unit 1.
pub fn boolean() -> BiQuantale {
    BiQuantale::diagonal(&boolean_quantale())
}

/// A chain with meet as composition and the top as unit.
pub fn chain_meet<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<FiniteQuantale> {
    let l = FiniteLattice::chain(names)?;
    let n = l.len();
    let top = l.top();
    let comp = Table::from_fn(n, |a, b| a.min(b));
    FiniteQuantale::new(l, comp, Some(top))
}

/// Names and values of the truncated tropical carrier with `n` elements:
/// `0, 1, …, n-2` and `inf`.
fn min_plus_names(n: usize) -> Vec<String> {
    (0..n).map(|i| if i + 1 == n { "inf".to_string() } else { i.to_string() }).collect()
}

fn min_plus_comp(n: usize, a: usize, b: usize) -> usize {
    let inf = n - 1;
    if a == inf || b == inf || a + b > n - 2 {
        inf
    } else {
        a + b
    }
}

/// The extended naturals truncated to `n` elements (`0, …, n-2, inf`) with
/// saturating addition as composition.
///
/// The lattice order is the reverse of the numeric order, so join is `min`,
/// `inf` is bottom and `0` is both top and unit.
pub fn min_plus_quantale(n: usize) -> Result<FiniteQuantale> {
    if n < 2 {
        return Err(Error::MalformedTable("min-plus carrier needs at least 2 elements".into()));
    }
    let l = FiniteLattice::new(min_plus_names(n), |a, b| a >= b)?;
    let comp = Table::from_fn(n, |a, b| min_plus_comp(n, a, b));
    FiniteQuantale::new(l, comp, Some(0))
}

/// [`min_plus_quantale`] with both compositions equal.
pub fn min_plus(n: usize) -> Result<BiQuantale> {
    Ok(BiQuantale::diagonal(&min_plus_quantale(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_passes() {
        assert!(check_quantale_laws(&boolean_quantale()).all_hold());
    }

    #[test]
    fn broken_unit_reports_witness() {
        let mut q = boolean_quantale();
        q.comp = Table::from_fn(2, |_, _| 0);
        let r = check_quantale_laws(&q);
        let u = r.get("unit-left").unwrap();
        assert!(!u.holds);
        assert_eq!(u.witness.as_deref(), Some(&["1".to_string()][..]));
    }

    #[test]
    fn three_chain_meet() {
        let q = chain_meet(["0", "m", "1"]).unwrap();
        // oracle: recompute every law instance directly on the min table
        for a in 0..3usize {
            for b in 0..3usize {
                for c in 0..3usize {
                    assert_eq!(a.min(b).min(c), a.min(b.min(c)));
                    assert_eq!(a.min(b.max(c)), a.min(b).max(a.min(c)));
                }
            }
        }
        assert!(check_quantale_laws(&q).all_hold());
        assert_eq!(quantale_star(&q, 1).unwrap(), 2);
    }

    #[test]
    fn boolean_star() {
        let q = boolean_quantale();
        assert_eq!(quantale_star(&q, 0).unwrap(), 1);
        assert_eq!(quantale_star(&q, 1).unwrap(), 1);
        let mut nu = q.clone();
        nu.unit = None;
        assert_eq!(quantale_star(&nu, 0), Err(Error::NotUnital));
    }

    #[test]
    fn min_plus_three() {
        let q = min_plus_quantale(3).unwrap();
        assert_eq!(q.lattice.names(), &["0", "1", "inf"]);
        assert_eq!(q.comp(1, 1), 2);
        assert_eq!(q.lattice.bottom(), 2);
        assert_eq!(q.lattice.top(), 0);
        assert_eq!(q.lattice.join(1, 2), 1);
        assert!(check_quantale_laws(&q).all_hold());
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(Table::new(2, vec![0, 1, 2, 0]), Err(Error::MalformedTable(_))));
        assert!(matches!(Table::new(2, vec![0, 1]), Err(Error::MalformedTable(_))));
    }
}
