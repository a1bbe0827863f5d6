use super::quantale::{min_plus_quantale, quantale_star, Dioid, FiniteQuantale, Table};
use crate::error::{Error, Result};
use crate::report::{LawCheck, LawReport};

/// A finite Kleene algebra given by tables: addition, composition, star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleeneAlgebraTable {
    pub names: Vec<String>,
    pub plus: Table,
    pub comp: Table,
    pub zero: usize,
    pub unit: usize,
    pub star: Vec<usize>,
}

impl KleeneAlgebraTable {
    pub fn new(
        names: Vec<String>,
        plus: Table,
        comp: Table,
        zero: usize,
        unit: usize,
        star: Vec<usize>,
    ) -> Result<Self> {
        let n = names.len();
        if plus.size() != n || comp.size() != n || star.len() != n {
            return Err(Error::MalformedTable("table sizes do not match the carrier".into()));
        }
        if zero >= n || unit >= n || star.iter().any(|&s| s >= n) {
            return Err(Error::MalformedTable("element index outside carrier".into()));
        }
        Ok(KleeneAlgebraTable { names, plus, comp, zero, unit, star })
    }

    /// The Kleene algebra of a unital quantale: join, composition and
    /// [`quantale_star`].
    pub fn from_quantale(q: &FiniteQuantale) -> Result<Self> {
        let one = q.unit.ok_or(Error::NotUnital)?;
        let n = q.len();
        let star = (0..n).map(|a| quantale_star(q, a)).collect::<Result<Vec<_>>>()?;
        Self::new(
            q.lattice.names().to_vec(),
            Table::from_fn(n, |a, b| q.lattice.join(a, b)),
            q.comp.clone(),
            q.lattice.bottom(),
            one,
            star,
        )
    }

    /// The truncated tropical Kleene algebra on `0, …, n-2, inf`:
    /// plus is `min`, composition saturating `+`, star constantly `0`.
    pub fn min_plus(n: usize) -> Result<Self> {
        Self::from_quantale(&min_plus_quantale(n)?)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }
}

impl Dioid for KleeneAlgebraTable {
    fn size(&self) -> usize {
        self.len()
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> Option<usize> {
        Some(self.unit)
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.plus.get(a, b)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.comp.get(a, b)
    }
}

/// Checks the dioid axioms and the four star axioms:
///
/// * `1 + a·a⋆ ≤ a⋆` and `1 + a⋆·a ≤ a⋆`
/// * `b + a·c ≤ c ⇒ a⋆·b ≤ c` and `b + c·a ≤ c ⇒ b·a⋆ ≤ c`
///
/// where `x ≤ y` means `x + y = y`.
pub fn check_kleene_axioms(k: &KleeneAlgebraTable) -> LawReport {
    let n = k.len();
    let (p, m, s) = (|a, b| k.add(a, b), |a, b| k.mul(a, b), |a: usize| k.star[a]);
    let le = |a, b| p(a, b) == b;
    let nm = |xs: &[usize]| xs.iter().map(|&x| k.name(x).to_string()).collect::<Vec<_>>();
    let first3 = |pred: &dyn Fn(usize, usize, usize) -> bool| {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !pred(a, b, c) {
                        return Some(nm(&[a, b, c]));
                    }
                }
            }
        }
        None
    };
    let first1 = |pred: &dyn Fn(usize) -> bool| (0..n).find(|&a| !pred(a)).map(|a| nm(&[a]));
    let (z, one) = (k.zero, k.unit);
    let mut r = LawReport::new();
    r.push(LawCheck::from_counterexample("plus-assoc", first3(&|a, b, c| p(p(a, b), c) == p(a, p(b, c)))));
    r.push(LawCheck::from_counterexample("plus-comm", first3(&|a, b, _| p(a, b) == p(b, a))));
    r.push(LawCheck::from_counterexample("plus-idem", first1(&|a| p(a, a) == a)));
    r.push(LawCheck::from_counterexample("plus-zero", first1(&|a| p(a, z) == a)));
    r.push(LawCheck::from_counterexample("comp-assoc", first3(&|a, b, c| m(m(a, b), c) == m(a, m(b, c)))));
    r.push(LawCheck::from_counterexample("comp-unit", first1(&|a| m(one, a) == a && m(a, one) == a)));
    r.push(LawCheck::from_counterexample(
        "distrib-left",
        first3(&|a, b, c| m(a, p(b, c)) == p(m(a, b), m(a, c))),
    ));
    r.push(LawCheck::from_counterexample(
        "distrib-right",
        first3(&|a, b, c| m(p(a, b), c) == p(m(a, c), m(b, c))),
    ));
    r.push(LawCheck::from_counterexample("zero-annihilates", first1(&|a| m(z, a) == z && m(a, z) == z)));
    r.push(LawCheck::from_counterexample("unfold-left", first1(&|a| le(p(one, m(a, s(a))), s(a)))));
    r.push(LawCheck::from_counterexample("unfold-right", first1(&|a| le(p(one, m(s(a), a)), s(a)))));
    r.push(LawCheck::from_counterexample(
        "induct-left",
        first3(&|a, b, c| !le(p(b, m(a, c)), c) || le(m(s(a), b), c)),
    ));
    r.push(LawCheck::from_counterexample(
        "induct-right",
        first3(&|a, b, c| !le(p(b, m(c, a)), c) || le(m(b, s(a)), c)),
    ));
    r
}
