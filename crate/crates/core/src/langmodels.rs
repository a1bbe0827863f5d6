//! Words over a finite alphabet, with concatenation as the sequential and
//! shuffle as the parallel relation.
//!
//! Universes are truncated at a maximal length. Length is a grading for both
//! relations, so every decomposition of an in-universe word stays inside
//! the universe and bounded law checks are exact on it.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::convolution::{LiftedAlgebra, WeightedFunction};
use crate::error::{Error, Result};
use crate::relstruct::{Carrier, Grading, RelBiMagma, TernaryRelation};
use crate::weights::BiQuantale;

/// Name used for the empty word in carriers and reports.
pub const EPSILON: &str = "eps";

/// All words of length at most `max_len`, ordered by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedWordUniverse {
    pub alphabet: Vec<char>,
    pub max_len: usize,
    words: Vec<String>,
    index: HashMap<String, usize>,
}

impl BoundedWordUniverse {
    pub fn new(alphabet: &[char], max_len: usize) -> Result<Self> {
        let mut alphabet = alphabet.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.iter().any(|c| !c.is_alphabetic()) {
            return Err(Error::Schema("alphabet letters must be alphabetic".into()));
        }
        let mut words = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            layer = layer.iter().flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}"))).collect();
            words.extend(layer.iter().cloned());
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(BoundedWordUniverse { alphabet, max_len, words, index })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Index of a word; `eps` and the empty string both denote the empty word.
    pub fn index_of(&self, w: &str) -> Result<usize> {
        let w = if w == EPSILON { "" } else { w };
        self.index.get(w).copied().ok_or_else(|| Error::UnknownElement(w.to_string()))
    }

    pub fn carrier(&self) -> Arc<Carrier> {
        Carrier::new(self.words.iter().map(|w| word_name(w))).expect("words are distinct")
    }

    /// Word length as a grading.
    pub fn grading(&self) -> Grading {
        Grading(self.words.iter().map(|w| w.chars().count()).collect())
    }
}

/// The carrier name of a word: the word itself, or `eps` when empty.
pub fn word_name(w: &str) -> String {
    if w.is_empty() {
        EPSILON.to_string()
    } else {
        w.to_string()
    }
}

/// Memoized shuffle following the recursion
/// `v∥ε = {v} = ε∥v` and `(av)∥(bw) = a(v∥bw) ∪ b(av∥w)`.
#[derive(Debug, Default)]
pub struct Shuffler {
    memo: HashMap<(String, String), BTreeSet<String>>,
}

impl Shuffler {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn shuffle(&mut self, v: &str, w: &str) -> BTreeSet<String> {
        if v.is_empty() {
            return BTreeSet::from([w.to_string()]);
        }
        if w.is_empty() {
            return BTreeSet::from([v.to_string()]);
        }
        let key = (v.to_string(), w.to_string());
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let a = v.chars().next().expect("non-empty");
        let b = w.chars().next().expect("non-empty");
        let (v1, w1) = (&v[a.len_utf8()..], &w[b.len_utf8()..]);
        let mut out: BTreeSet<String> = self.shuffle(v1, w).into_iter().map(|s| format!("{a}{s}")).collect();
        out.extend(self.shuffle(v, w1).into_iter().map(|s| format!("{b}{s}")));
        self.memo.insert(key, out.clone());
        out
    }
}

/// All interleavings of `v` and `w`.
pub fn shuffle(v: &str, w: &str) -> BTreeSet<String> {
    Shuffler::new().shuffle(v, w)
}

/// Concatenation (sequential) and shuffle (parallel) on the universe, with
/// `{ε}` as unit set for both.
pub fn build_word_bimagma(u: &BoundedWordUniverse) -> RelBiMagma {
    let n = u.len();
    let mut seq = Vec::new();
    for (x, w) in u.words().iter().enumerate() {
        for cut in 0..=w.len() {
            let (y, z) = w.split_at(cut);
            seq.push((x, u.index[y], u.index[z]));
        }
    }
    let mut sh = Shuffler::new();
    let mut par = Vec::new();
    for (y, wy) in u.words().iter().enumerate() {
        for (z, wz) in u.words().iter().enumerate() {
            if wy.len() + wz.len() > u.max_len {
                continue;
            }
            for x in sh.shuffle(wy, wz) {
                par.push((u.index[&x], y, z));
            }
        }
    }
    let eps = vec![u.index[""]];
    RelBiMagma::new(
        u.carrier(),
        TernaryRelation::new(n, seq).expect("in range"),
        TernaryRelation::new(n, par).expect("in range"),
        Some(eps.clone()),
        Some(eps),
    )
    .expect("consistent sizes")
}

/// The weighted-language algebra: sequential convolution is the language
/// product and parallel convolution the shuffle product, over `weights`.
pub fn weighted_language_ops(u: &BoundedWordUniverse, weights: BiQuantale) -> LiftedAlgebra {
    LiftedAlgebra::new(build_word_bimagma(u), weights)
}

/// The function giving weight `a` to each listed word and bottom elsewhere.
pub fn language(u: &BoundedWordUniverse, weights: &BiQuantale, words: &[&str], a: usize) -> Result<WeightedFunction> {
    let mut f = WeightedFunction::bottom(u.len(), weights.lattice.bottom());
    for w in words {
        f.values[u.index_of(w)?] = a;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle("a", "b"), BTreeSet::from(["ab".into(), "ba".into()]));
        assert_eq!(shuffle("ab", "c"), BTreeSet::from(["abc".into(), "acb".into(), "cab".into()]));
        assert_eq!(shuffle("ab", ""), BTreeSet::from(["ab".into()]));
        assert_eq!(shuffle("a", "a"), BTreeSet::from(["aa".into()]));
    }

    #[test]
    fn universe_order() {
        let u = BoundedWordUniverse::new(&['b', 'a'], 2).unwrap();
        assert_eq!(u.words(), &["", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(u.index_of("eps").unwrap(), 0);
        assert!(u.index_of("abc").is_err());
    }

    #[test]
    fn unary_triple_counts() {
        let u = BoundedWordUniverse::new(&['a'], 2).unwrap();
        let b = build_word_bimagma(&u);
        assert_eq!(b.seq.len(), 6);
        assert_eq!(b.par.len(), 6);
        assert_eq!(b.seq, b.par);
    }

    #[test]
    fn max_len_zero() {
        let u = BoundedWordUniverse::new(&['a', 'b'], 0).unwrap();
        let b = build_word_bimagma(&u);
        assert_eq!(b.len(), 1);
        assert_eq!(b.seq.triples().collect::<Vec<_>>(), vec![(0, 0, 0)]);
    }
}
