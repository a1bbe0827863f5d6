use crate::error::{Error, Result};
use crate::order::Preorder;
use crate::relstruct::{Carrier, RelMagma, TernaryRelation};
use crate::weights::{Dioid, FiniteLattice, FiniteQuantale};

/// A function from a finite carrier to weights; `values[x]` is the weight of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedFunction {
    pub values: Vec<usize>,
}

impl WeightedFunction {
    pub fn new(values: Vec<usize>) -> Self {
        WeightedFunction { values }
    }

    /// The constant function at `zero`.
    pub fn bottom(n: usize, zero: usize) -> Self {
        WeightedFunction { values: vec![zero; n] }
    }

    /// `δ^a_x`: weight `a` at `x`, `zero` elsewhere.
    pub fn delta(n: usize, zero: usize, x: usize, a: usize) -> Self {
        let mut f = Self::bottom(n, zero);
        f.values[x] = a;
        f
    }

    /// Builds a function from `(element, weight)` name pairs; absent elements get `zero`.
    pub fn from_pairs(carrier: &Carrier, weights: &FiniteLattice, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut f = Self::bottom(carrier.len(), weights.bottom());
        for (x, a) in pairs {
            f.values[carrier.index_of(x)?] = weights.index_of(a)?;
        }
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize) -> usize {
        self.values[x]
    }

    /// Elements with non-`zero` weight.
    pub fn support(&self, zero: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| self.values[x] != zero)
    }

    /// `(element, weight)` name pairs over the support.
    pub fn to_pairs(&self, carrier: &Carrier, weights: &FiniteLattice) -> Vec<(String, String)> {
        self.support(weights.bottom())
            .map(|x| (carrier.name(x).to_string(), weights.name(self.values[x]).to_string()))
            .collect()
    }

    /// Renders the support as `{x: a, y: b}`.
    pub fn display(&self, carrier: &Carrier, weights: &FiniteLattice) -> String {
        let parts: Vec<String> =
            self.to_pairs(carrier, weights).into_iter().map(|(x, a)| format!("{x}: {a}")).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Pointwise join.
    pub fn join(&self, other: &Self, l: &FiniteLattice) -> Self {
        WeightedFunction { values: self.values.iter().zip(&other.values).map(|(&a, &b)| l.join(a, b)).collect() }
    }

    /// Pointwise order.
    pub fn leq(&self, other: &Self, l: &FiniteLattice) -> bool {
        self.values.iter().zip(&other.values).all(|(&a, &b)| l.leq(a, b))
    }
}

fn same_len(f: &WeightedFunction, g: &WeightedFunction, n: usize) -> Result<()> {
    if f.len() != n || g.len() != n {
        return Err(Error::CarrierMismatch(format!(
            "functions of length {} and {} over a carrier of {}",
            f.len(),
            g.len(),
            n
        )));
    }
    Ok(())
}

#[inline]
pub(crate) fn convolve_at_unchecked<D: Dioid>(
    rel: &TernaryRelation,
    d: &D,
    f: &[usize],
    g: &[usize],
    x: usize,
) -> usize {
    rel.decompositions(x).fold(d.zero(), |acc, (y, w)| d.add(acc, d.mul(f[y], g[w])))
}

pub(crate) fn convolve_unchecked<D: Dioid>(rel: &TernaryRelation, d: &D, f: &[usize], g: &[usize]) -> WeightedFunction {
    WeightedFunction { values: (0..rel.size()).map(|x| convolve_at_unchecked(rel, d, f, g, x)).collect() }
}

/// `(f ∗ g) x = ⋁_{R^x_{yz}} f y • g z`; bottom when `x` has no decomposition.
pub fn convolve_at<D: Dioid>(
    rel: &TernaryRelation,
    d: &D,
    f: &WeightedFunction,
    g: &WeightedFunction,
    x: usize,
) -> Result<usize> {
    same_len(f, g, rel.size())?;
    if x >= rel.size() {
        return Err(Error::UnknownElement(x.to_string()));
    }
    Ok(convolve_at_unchecked(rel, d, &f.values, &g.values, x))
}

/// `f ∗ g` at every point.
pub fn convolve<D: Dioid>(
    rel: &TernaryRelation,
    d: &D,
    f: &WeightedFunction,
    g: &WeightedFunction,
) -> Result<WeightedFunction> {
    same_len(f, g, rel.size())?;
    Ok(convolve_unchecked(rel, d, &f.values, &g.values))
}

/// `δ^a_x` over the carrier of `m`, with bottom taken from `q`.
pub fn delta(m: &RelMagma, q: &FiniteQuantale, x: usize, a: usize) -> WeightedFunction {
    WeightedFunction::delta(m.len(), q.lattice.bottom(), x, a)
}

/// `id_E`: the unit of `q` on the relational units of `m`, bottom elsewhere.
pub fn unit_function(m: &RelMagma, q: &FiniteQuantale) -> Result<WeightedFunction> {
    let units = m.units.as_ref().ok_or(Error::NotUnital)?;
    let one = q.unit.ok_or(Error::NotUnital)?;
    Ok(unit_function_on(m.len(), units, q.lattice.bottom(), one))
}

pub(crate) fn unit_function_on(n: usize, units: &[usize], zero: usize, one: usize) -> WeightedFunction {
    let mut f = WeightedFunction::bottom(n, zero);
    for &e in units {
        f.values[e] = one;
    }
    f
}

/// `x ⪯ y ⇒ f y ≤ f x` for all related pairs.
pub fn is_antitone(f: &WeightedFunction, preorder: &Preorder, weights: &FiniteLattice) -> bool {
    let n = preorder.len();
    (0..n).all(|x| (0..n).all(|y| !preorder.leq(x, y) || weights.leq(f.get(y), f.get(x))))
}

/// `{x | ∃y ∈ s. x ⪯ y}`.
pub fn down_closure(s: &[usize], preorder: &Preorder) -> Vec<usize> {
    preorder.down_closure(s)
}
