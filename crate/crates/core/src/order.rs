//! Finite preorders stored as dense boolean matrices.

use crate::error::{Error, Result};

/// A reflexive, transitive relation on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    n: usize,
    leq: Vec<bool>,
}

impl Preorder {
    /// The discrete preorder (equality).
    pub fn discrete(n: usize) -> Self {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Preorder { n, leq }
    }

    /// Builds a preorder from a predicate, which must already be reflexive
    /// and transitive.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = f(a, b);
            }
        }
        let p = Preorder { n, leq };
        p.validate()?;
        Ok(p)
    }

    /// Reflexive-transitive closure of the given pairs.
    pub fn closure_of(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut p = Preorder::discrete(n);
        for (a, b) in pairs {
            p.leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if p.leq[i * n + k] {
                    for j in 0..n {
                        if p.leq[k * n + j] {
                            p.leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        p
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(Error::MalformedTable(format!("preorder not reflexive at {a}")));
            }
            for b in 0..n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::MalformedTable(format!(
                            "preorder not transitive at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    /// `a ⪯ b` and not `b ⪯ a`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && !self.leq(b, a)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| a == b || !(self.leq(a, b) && self.leq(b, a))))
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| a == b || !self.leq(a, b)))
    }

    /// Elements below `b`.
    pub fn below(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&a| self.leq(a, b))
    }

    /// `{x | ∃y ∈ s. x ⪯ y}`.
    pub fn down_closure(&self, s: &[usize]) -> Vec<usize> {
        (0..self.n).filter(|&x| s.iter().any(|&y| self.leq(x, y))).collect()
    }
}
