use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::function::{convolve_unchecked, unit_function_on, WeightedFunction};
use crate::error::{Error, Result};
use crate::relstruct::RelBiMagma;
use crate::report::LawCheck;
use crate::weights::{interchange_arity, interchange_check, BiQuantale, OrderedBiAlgebra};
use crate::Which;

/// The convolution algebra `Q^X` of a relational bi-magma and a bi-quantale.
#[derive(Debug, Clone)]
pub struct LiftedAlgebra {
    pub base: RelBiMagma,
    pub weights: BiQuantale,
}

impl LiftedAlgebra {
    pub fn new(base: RelBiMagma, weights: BiQuantale) -> Self {
        LiftedAlgebra { base, weights }
    }

    /// Number of points of the base.
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn zero(&self) -> usize {
        self.weights.lattice.bottom()
    }

    pub fn bottom(&self) -> WeightedFunction {
        WeightedFunction::bottom(self.len(), self.zero())
    }

    pub fn delta(&self, x: usize, a: usize) -> WeightedFunction {
        WeightedFunction::delta(self.len(), self.zero(), x, a)
    }

    fn check(&self, f: &WeightedFunction) -> Result<()> {
        if f.len() != self.len() || f.values.iter().any(|&a| a >= self.weights.len()) {
            return Err(Error::CarrierMismatch("function does not fit the lifted algebra".into()));
        }
        Ok(())
    }

    /// `f ∗ g` for the chosen relation and composition.
    pub fn convolve(&self, which: Which, f: &WeightedFunction, g: &WeightedFunction) -> Result<WeightedFunction> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.conv(which, f, g))
    }

    pub(crate) fn conv(&self, which: Which, f: &WeightedFunction, g: &WeightedFunction) -> WeightedFunction {
        convolve_unchecked(self.base.relation(which), &self.weights.view(which), &f.values, &g.values)
    }

    /// `id_E` for the chosen relation's unit set and composition's unit.
    pub fn unit_function(&self, which: Which) -> Result<WeightedFunction> {
        let units = self.base.units(which).ok_or(Error::NotUnital)?;
        let one = match which {
            Which::Seq => self.weights.unit_seq,
            Which::Par => self.weights.unit_par,
        }
        .ok_or(Error::NotUnital)?;
        Ok(unit_function_on(self.len(), units, self.zero(), one))
    }

    pub fn leq(&self, f: &WeightedFunction, g: &WeightedFunction) -> bool {
        f.leq(g, &self.weights.lattice)
    }

    pub fn join(&self, f: &WeightedFunction, g: &WeightedFunction) -> WeightedFunction {
        f.join(g, &self.weights.lattice)
    }

    /// `|Q|^|X|`, if it fits in a `usize`.
    pub fn function_count(&self) -> Option<usize> {
        self.weights.len().checked_pow(self.len() as u32)
    }

    /// Every function, in lexicographic order of value vectors.
    pub fn all_functions(&self) -> Vec<WeightedFunction> {
        let (n, q) = (self.len(), self.weights.len());
        let total = self.function_count().expect("function space too large to enumerate");
        (0..total)
            .map(|mut code| {
                let mut values = vec![0; n];
                for v in values.iter_mut().rev() {
                    *v = code % q;
                    code /= q;
                }
                WeightedFunction { values }
            })
            .collect()
    }

    /// The bottom function followed by every `δ^a_x` with `a` non-bottom,
    /// ordered by `(x, a)`.
    pub fn deltas(&self) -> Vec<WeightedFunction> {
        let z = self.zero();
        let mut out = vec![self.bottom()];
        for x in 0..self.len() {
            for a in (0..self.weights.len()).filter(|&a| a != z) {
                out.push(self.delta(x, a));
            }
        }
        out
    }

    /// Renders the support as `{x: a}`.
    pub fn display(&self, f: &WeightedFunction) -> String {
        f.display(&self.base.carrier, &self.weights.lattice)
    }
}

impl OrderedBiAlgebra for LiftedAlgebra {
    type E = WeightedFunction;
    fn seq(&self, a: &WeightedFunction, b: &WeightedFunction) -> WeightedFunction {
        self.conv(Which::Seq, a, b)
    }
    fn par(&self, a: &WeightedFunction, b: &WeightedFunction) -> WeightedFunction {
        self.conv(Which::Par, a, b)
    }
    fn le(&self, a: &WeightedFunction, b: &WeightedFunction) -> bool {
        self.leq(a, b)
    }
    fn is_bottom(&self, a: &WeightedFunction) -> bool {
        a.values.iter().all(|&v| v == self.zero())
    }
    fn unit_seq(&self) -> Option<WeightedFunction> {
        self.unit_function(Which::Seq).ok()
    }
    fn unit_par(&self) -> Option<WeightedFunction> {
        self.unit_function(Which::Par).ok()
    }
    fn render(&self, a: &WeightedFunction) -> String {
        self.display(a)
    }
}

/// A finite subset of `Q^X` closed under both convolutions, with the
/// composition tables precomputed. Elements are indices into `funcs`.
pub(crate) struct Materialized<'a> {
    lifted: &'a LiftedAlgebra,
    funcs: Vec<WeightedFunction>,
    seq: Vec<u32>,
    par: Vec<u32>,
    bottom: usize,
}

impl<'a> Materialized<'a> {
    /// Materializes the whole function space; `|Q|^|X|` must be small.
    pub(crate) fn full(lifted: &'a LiftedAlgebra) -> Self {
        let funcs = lifted.all_functions();
        let (q, n) = (lifted.weights.len(), lifted.len());
        let encode = |f: &WeightedFunction| f.values.iter().fold(0usize, |acc, &v| acc * q + v);
        let size = funcs.len();
        let mut seq = vec![0u32; size * size];
        let mut par = vec![0u32; size * size];
        for (i, f) in funcs.iter().enumerate() {
            for (j, g) in funcs.iter().enumerate() {
                seq[i * size + j] = encode(&lifted.conv(Which::Seq, f, g)) as u32;
                par[i * size + j] = encode(&lifted.conv(Which::Par, f, g)) as u32;
            }
        }
        let bottom = encode(&lifted.bottom());
        debug_assert_eq!(funcs.len(), q.pow(n as u32));
        Materialized { lifted, funcs, seq, par, bottom }
    }

    pub(crate) fn size(&self) -> usize {
        self.funcs.len()
    }

    pub(crate) fn function(&self, i: usize) -> &WeightedFunction {
        &self.funcs[i]
    }

    pub(crate) fn index_of(&self, f: &WeightedFunction) -> usize {
        let q = self.lifted.weights.len();
        f.values.iter().fold(0usize, |acc, &v| acc * q + v)
    }

    pub(crate) fn op(&self, which: Which, a: usize, b: usize) -> usize {
        let t = match which {
            Which::Seq => &self.seq,
            Which::Par => &self.par,
        };
        t[a * self.size() + b] as usize
    }
}

impl OrderedBiAlgebra for Materialized<'_> {
    type E = usize;
    fn seq(&self, a: &usize, b: &usize) -> usize {
        self.seq[a * self.size() + b] as usize
    }
    fn par(&self, a: &usize, b: &usize) -> usize {
        self.par[a * self.size() + b] as usize
    }
    fn le(&self, a: &usize, b: &usize) -> bool {
        self.lifted.leq(&self.funcs[*a], &self.funcs[*b])
    }
    fn is_bottom(&self, a: &usize) -> bool {
        *a == self.bottom
    }
    fn unit_seq(&self) -> Option<usize> {
        self.lifted.unit_seq().map(|f| self.index_of(&f))
    }
    fn unit_par(&self) -> Option<usize> {
        self.lifted.unit_par().map(|f| self.index_of(&f))
    }
    fn render(&self, a: &usize) -> String {
        self.lifted.display(&self.funcs[*a])
    }
}

/// A law of the lifted algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftedLaw {
    Assoc(Which),
    Unit(Which),
    Comm(Which),
    Interchange(usize),
}

impl LiftedLaw {
    /// Number of function variables the law quantifies over.
    pub fn arity(self) -> Result<usize> {
        match self {
            LiftedLaw::Assoc(_) => Ok(3),
            LiftedLaw::Unit(_) => Ok(1),
            LiftedLaw::Comm(_) => Ok(2),
            LiftedLaw::Interchange(k) => interchange_arity(k),
        }
    }

    /// The laws of an interchange quantale with commutative parallel composition.
    pub fn full_suite() -> Vec<LiftedLaw> {
        let mut v = vec![
            LiftedLaw::Assoc(Which::Seq),
            LiftedLaw::Assoc(Which::Par),
            LiftedLaw::Unit(Which::Seq),
            LiftedLaw::Unit(Which::Par),
            LiftedLaw::Comm(Which::Par),
        ];
        v.extend((1..=7).map(LiftedLaw::Interchange));
        v
    }
}

impl fmt::Display for LiftedLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftedLaw::Assoc(w) => write!(f, "assoc-{w}"),
            LiftedLaw::Unit(w) => write!(f, "unit-{w}"),
            LiftedLaw::Comm(w) => write!(f, "comm-{w}"),
            LiftedLaw::Interchange(k) => write!(f, "i{k}"),
        }
    }
}

impl FromStr for LiftedLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let which = |w: &str| match w {
            "seq" => Ok(Which::Seq),
            "par" => Ok(Which::Par),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown lifted law `{s}`") }),
        };
        if let Some(w) = s.strip_prefix("assoc-") {
            return Ok(LiftedLaw::Assoc(which(w)?));
        }
        if let Some(w) = s.strip_prefix("unit-") {
            return Ok(LiftedLaw::Unit(which(w)?));
        }
        if s == "unit" {
            return Ok(LiftedLaw::Unit(Which::Seq));
        }
        if let Some(w) = s.strip_prefix("comm-") {
            return Ok(LiftedLaw::Comm(which(w)?));
        }
        if let Some(k) = s.strip_prefix('i').and_then(|k| k.parse::<usize>().ok()) {
            interchange_arity(k)?;
            return Ok(LiftedLaw::Interchange(k));
        }
        Err(Error::Parse { pos: 0, msg: format!("unknown lifted law `{s}`") })
    }
}

/// Limits on exhaustive function-space checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest `|Q|^|X|` enumerated exhaustively.
    pub max_functions: usize,
    /// Largest number of quantified tuples (`|domain|^arity`) per law.
    pub max_tuples: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_functions: 4096, max_tuples: 1 << 20 }
    }
}

/// Which functions a lifted check quantified over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Every function in `Q^X`.
    Exhaustive,
    /// The deltas, plus their binary convolutions when the budget allows.
    GeneratedFragment,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::GeneratedFragment => "generated-fragment only",
        })
    }
}

/// Result of [`check_lifted_laws`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedLawResult {
    pub check: LawCheck,
    pub strategy: Strategy,
    pub domain_size: usize,
}

fn tuples_within(domain: usize, arity: usize, max: usize) -> bool {
    domain.checked_pow(arity as u32).is_some_and(|t| t <= max)
}

/// The delta-generated domain used when the function space is too large.
///
/// When both compositions of `Q` preserve binary joins and annihilate
/// bottom, convolution is join-preserving in each argument and every
/// function is the join of its deltas. Laws whose two sides mention each
/// variable exactly once (all laws checked here) then hold on all of `Q^X`
/// as soon as they hold on deltas. Results are still labelled as
/// fragment-only, since the weights are not required to be quantales.
pub fn generated_fragment(l: &LiftedAlgebra, arity: usize, budget: Budget) -> Vec<WeightedFunction> {
    let deltas = l.deltas();
    let mut set: BTreeSet<WeightedFunction> = deltas.iter().cloned().collect();
    for f in &deltas {
        for g in &deltas {
            set.insert(l.conv(Which::Seq, f, g));
            set.insert(l.conv(Which::Par, f, g));
        }
    }
    if tuples_within(set.len(), arity, budget.max_tuples) {
        let mut out = deltas.clone();
        let base: BTreeSet<_> = deltas.into_iter().collect();
        out.extend(set.into_iter().filter(|f| !base.contains(f)));
        out
    } else {
        deltas
    }
}

fn first_binary<E: Clone>(dom: &[E], mut ok: impl FnMut(&E, &E) -> bool) -> Option<Vec<E>> {
    for a in dom {
        for b in dom {
            if !ok(a, b) {
                return Some(vec![a.clone(), b.clone()]);
            }
        }
    }
    None
}

pub(crate) fn run_law<A: OrderedBiAlgebra>(alg: &A, law: LiftedLaw, dom: &[A::E]) -> Result<LawCheck>
where
    A::E: PartialEq,
{
    let name = law.to_string();
    let render = |xs: Vec<A::E>| xs.iter().map(|x| alg.render(x)).collect::<Vec<_>>();
    let op = |w: Which, a: &A::E, b: &A::E| match w {
        Which::Seq => alg.seq(a, b),
        Which::Par => alg.par(a, b),
    };
    Ok(match law {
        LiftedLaw::Interchange(k) => interchange_check(alg, k, dom)?,
        LiftedLaw::Comm(w) => {
            LawCheck::from_counterexample(name, first_binary(dom, |a, b| op(w, a, b) == op(w, b, a)).map(render))
        }
        LiftedLaw::Unit(w) => {
            let unit = match w {
                Which::Seq => alg.unit_seq(),
                Which::Par => alg.unit_par(),
            }
            .ok_or(Error::NotUnital)?;
            let cx = dom.iter().find(|f| op(w, f, &unit) != **f || op(w, &unit, f) != **f);
            LawCheck::from_counterexample(name, cx.map(|f| vec![alg.render(f)]))
        }
        LiftedLaw::Assoc(w) => {
            let mut cx = None;
            'outer: for a in dom {
                for b in dom {
                    let ab = op(w, a, b);
                    for c in dom {
                        if op(w, &ab, c) != op(w, a, &op(w, b, c)) {
                            cx = Some(vec![a.clone(), b.clone(), c.clone()]);
                            break 'outer;
                        }
                    }
                }
            }
            LawCheck::from_counterexample(name, cx.map(render))
        }
    })
}

/// Checks one law of `Q^X`, exhaustively when `|Q|^|X|` and the number of
/// quantified tuples fit the budget, otherwise on the delta-generated fragment.
pub fn check_lifted_laws(l: &LiftedAlgebra, law: LiftedLaw, budget: Budget) -> Result<LiftedLawResult> {
    let arity = law.arity()?;
    let exhaustive = l
        .function_count()
        .is_some_and(|n| n <= budget.max_functions && tuples_within(n, arity, budget.max_tuples));
    if exhaustive {
        if arity >= 3 {
            let m = Materialized::full(l);
            let dom: Vec<usize> = (0..m.size()).collect();
            let check = run_law(&m, law, &dom)?;
            return Ok(LiftedLawResult { check, strategy: Strategy::Exhaustive, domain_size: dom.len() });
        }
        let dom = l.all_functions();
        let check = run_law(l, law, &dom)?;
        return Ok(LiftedLawResult { check, strategy: Strategy::Exhaustive, domain_size: dom.len() });
    }
    let dom = generated_fragment(l, arity, budget);
    let check = run_law(l, law, &dom)?;
    Ok(LiftedLawResult {
        check: check.with_note(Strategy::GeneratedFragment.to_string()),
        strategy: Strategy::GeneratedFragment,
        domain_size: dom.len(),
    })
}

/// Runs [`check_lifted_laws`] on each law in order.
pub fn check_lifted_suite(l: &LiftedAlgebra, laws: &[LiftedLaw], budget: Budget) -> Result<Vec<LiftedLawResult>> {
    laws.iter().map(|&law| check_lifted_laws(l, law, budget)).collect()
}
