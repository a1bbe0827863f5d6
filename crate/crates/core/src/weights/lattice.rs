use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite lattice over named elements, with join and meet tables derived
/// from the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from element names and an order predicate on indices.
    ///
    /// Fails with [`Error::NotALattice`] if the predicate is not a partial
    /// order or some pair lacks a join or meet.
    pub fn new(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotALattice("empty carrier".into()));
        }
        let mut index = HashMap::new();
        for (i, s) in names.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::MalformedTable(format!("duplicate element `{s}`")));
            }
        }
        let mut m = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = leq(a, b);
            }
        }
        let le = |a: usize, b: usize| m[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::NotALattice(format!("`{}` ≰ itself", names[a])));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::NotALattice(format!(
                        "`{}` and `{}` are equivalent but distinct",
                        names[a], names[b]
                    )));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::NotALattice("order is not transitive".into()));
                    }
                }
            }
        }
        let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&c| if upper { le(a, c) && le(b, c) } else { le(c, a) && le(c, b) })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| if upper { le(c, d) } else { le(d, c) }))
        };
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = bound(a, b, true).ok_or_else(|| {
                    Error::NotALattice(format!("no join of `{}` and `{}`", names[a], names[b]))
                })?;
                meet[a * n + b] = bound(a, b, false).ok_or_else(|| {
                    Error::NotALattice(format!("no meet of `{}` and `{}`", names[a], names[b]))
                })?;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| le(b, x))).expect("finite lattice has a bottom");
        let top = (0..n).find(|&t| (0..n).all(|x| le(x, t))).expect("finite lattice has a top");
        Ok(FiniteLattice { names, index, leq: m, join, meet, bottom, top })
    }

    /// The chain `names[0] < names[1] < ...`.
    pub fn chain<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        Self::new(names, |a, b| a <= b)
    }

    /// The two-element chain `0 < 1`.
    pub fn boolean() -> Self {
        Self::chain(["0", "1"]).expect("two-element chain")
    }

    /// The powerset of `atoms` ordered by inclusion; element `i` is the subset
    /// with bitmask `i`, named by listing its atoms (`{}` for the empty set).
    pub fn powerset(atoms: &[&str]) -> Result<Self> {
        let k = atoms.len();
        let names = (0..1usize << k)
            .map(|m| {
                let parts: Vec<&str> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| atoms[i]).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        Self::new(names, |a, b| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Join of a finite family; bottom for the empty family.
    pub fn join_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.leq(a, b) || self.leq(b, a)))
    }
}
