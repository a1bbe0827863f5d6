use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Named elements `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, s) in names.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::MalformedTable(format!("duplicate element `{s}`")));
            }
        }
        Ok(Arc::new(Carrier { names, index }))
    }

    /// Elements named `0`, `1`, …
    pub fn numbered(n: usize) -> Arc<Self> {
        Self::new((0..n).map(|i| i.to_string())).expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn render(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| self.name(x).to_string()).collect()
    }
}

/// A ternary relation on `0..n`; `(x, y, z)` stands for `R^x_{yz}`.
///
/// Triples are kept sorted, so the decompositions of `x` form a contiguous
/// slice; a second index lists, for each pair `(y, z)`, the sorted results `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryRelation {
    n: usize,
    triples: Vec<[u32; 3]>,
    result_start: Vec<u32>,
    pair_start: Vec<u32>,
    pair_results: Vec<u32>,
}

impl TernaryRelation {
    pub fn new(n: usize, triples: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut ts: Vec<[u32; 3]> = Vec::new();
        for (x, y, z) in triples {
            if x >= n || y >= n || z >= n {
                return Err(Error::MalformedTable(format!(
                    "triple ({x}, {y}, {z}) outside carrier of size {n}"
                )));
            }
            ts.push([x as u32, y as u32, z as u32]);
        }
        ts.sort_unstable();
        ts.dedup();
        let mut result_start = vec![0u32; n + 1];
        for t in &ts {
            result_start[t[0] as usize + 1] += 1;
        }
        for i in 0..n {
            result_start[i + 1] += result_start[i];
        }
        let mut pair_start = vec![0u32; n * n + 1];
        for t in &ts {
            pair_start[(t[1] as usize) * n + t[2] as usize + 1] += 1;
        }
        for i in 0..n * n {
            pair_start[i + 1] += pair_start[i];
        }
        let mut fill = pair_start.clone();
        let mut pair_results = vec![0u32; ts.len()];
        // triples are sorted by x, so each pair's results come out sorted
        for t in &ts {
            let p = (t[1] as usize) * n + t[2] as usize;
            pair_results[fill[p] as usize] = t[0];
            fill[p] += 1;
        }
        Ok(TernaryRelation { n, triples: ts, result_start, pair_start, pair_results })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, std::iter::empty()).expect("empty relation")
    }

    /// Decodes a bitmask over all `n³` triples, bit `x·n² + y·n + z`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let ts = (0..n * n * n).filter(|i| mask >> i & 1 == 1).map(|i| (i / (n * n), i / n % n, i % n));
        Self::new(n, ts).expect("mask within carrier")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// All triples in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.triples.iter().map(|t| (t[0] as usize, t[1] as usize, t[2] as usize))
    }

    /// The pairs `(y, z)` with `R^x_{yz}`, sorted.
    pub fn decompositions(&self, x: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (a, b) = (self.result_start[x] as usize, self.result_start[x + 1] as usize);
        self.triples[a..b].iter().map(|t| (t[1] as usize, t[2] as usize))
    }

    /// The results `x` with `R^x_{yz}`, sorted.
    pub fn results(&self, y: usize, z: usize) -> impl Iterator<Item = usize> + '_ {
        self.results_raw(y, z).iter().map(|&x| x as usize)
    }

    #[inline]
    pub(crate) fn results_raw(&self, y: usize, z: usize) -> &[u32] {
        let p = y * self.n + z;
        &self.pair_results[self.pair_start[p] as usize..self.pair_start[p + 1] as usize]
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize, z: usize) -> bool {
        self.results_raw(y, z).binary_search(&(x as u32)).is_ok()
    }

    /// Encodes the relation as a bitmask (see [`Self::from_mask`]); `n³ ≤ 64`.
    pub fn to_mask(&self) -> u64 {
        let n = self.n;
        assert!(n * n * n <= 64, "relation too large for a mask");
        self.triples().fold(0, |m, (x, y, z)| m | 1 << (x * n * n + y * n + z))
    }

    /// The relation with `y` and `z` swapped in every triple.
    pub fn transpose(&self) -> Self {
        Self::new(self.n, self.triples().map(|(x, y, z)| (x, z, y))).expect("same carrier")
    }

    pub fn is_subset(&self, other: &TernaryRelation) -> bool {
        self.triples().all(|(x, y, z)| other.contains(x, y, z))
    }
}

/// A set with a ternary relation and optionally a set of relational units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelMagma {
    pub carrier: Arc<Carrier>,
    pub rel: TernaryRelation,
    pub units: Option<Vec<usize>>,
}

fn check_units(n: usize, units: &Option<Vec<usize>>) -> Result<Option<Vec<usize>>> {
    match units {
        None => Ok(None),
        Some(u) => {
            if let Some(bad) = u.iter().find(|&&e| e >= n) {
                return Err(Error::MalformedTable(format!("unit index {bad} outside carrier")));
            }
            let mut u = u.clone();
            u.sort_unstable();
            u.dedup();
            Ok(Some(u))
        }
    }
}

impl RelMagma {
    pub fn new(carrier: Arc<Carrier>, rel: TernaryRelation, units: Option<Vec<usize>>) -> Result<Self> {
        if rel.size() != carrier.len() {
            return Err(Error::CarrierMismatch(format!(
                "relation over {} elements, carrier has {}",
                rel.size(),
                carrier.len()
            )));
        }
        let units = check_units(carrier.len(), &units)?;
        Ok(RelMagma { carrier, rel, units })
    }

    /// Builds a magma from element names and named triples `(x, y, z)`.
    pub fn from_named(
        names: &[&str],
        triples: &[(&str, &str, &str)],
        units: Option<&[&str]>,
    ) -> Result<Self> {
        let c = Carrier::new(names.iter().copied())?;
        let ts = triples
            .iter()
            .map(|(x, y, z)| Ok((c.index_of(x)?, c.index_of(y)?, c.index_of(z)?)))
            .collect::<Result<Vec<_>>>()?;
        let units = units
            .map(|u| u.iter().map(|e| c.index_of(e)).collect::<Result<Vec<_>>>())
            .transpose()?;
        let rel = TernaryRelation::new(c.len(), ts)?;
        Self::new(c, rel, units)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        self.carrier.name(x)
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.units.as_ref().is_some_and(|u| u.binary_search(&x).is_ok())
    }
}

/// A set with two ternary relations (sequential and parallel) and optional unit sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelBiMagma {
    pub carrier: Arc<Carrier>,
    pub seq: TernaryRelation,
    pub par: TernaryRelation,
    pub units_seq: Option<Vec<usize>>,
    pub units_par: Option<Vec<usize>>,
}

impl RelBiMagma {
    pub fn new(
        carrier: Arc<Carrier>,
        seq: TernaryRelation,
        par: TernaryRelation,
        units_seq: Option<Vec<usize>>,
        units_par: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = carrier.len();
        if seq.size() != n || par.size() != n {
            return Err(Error::CarrierMismatch("relation and carrier sizes differ".into()));
        }
        let units_seq = check_units(n, &units_seq)?;
        let units_par = check_units(n, &units_par)?;
        Ok(RelBiMagma { carrier, seq, par, units_seq, units_par })
    }

    /// Both relations and unit sets taken from `m`.
    pub fn diagonal(m: &RelMagma) -> Self {
        RelBiMagma {
            carrier: m.carrier.clone(),
            seq: m.rel.clone(),
            par: m.rel.clone(),
            units_seq: m.units.clone(),
            units_par: m.units.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        self.carrier.name(x)
    }

    pub fn relation(&self, which: crate::Which) -> &TernaryRelation {
        match which {
            crate::Which::Seq => &self.seq,
            crate::Which::Par => &self.par,
        }
    }

    pub fn units(&self, which: crate::Which) -> Option<&[usize]> {
        match which {
            crate::Which::Seq => self.units_seq.as_deref(),
            crate::Which::Par => self.units_par.as_deref(),
        }
    }

    /// One relation as a magma, with its unit set.
    pub fn retract(&self, which: crate::Which) -> RelMagma {
        RelMagma {
            carrier: self.carrier.clone(),
            rel: self.relation(which).clone(),
            units: self.units(which).map(<[usize]>::to_vec),
        }
    }

    /// The bi-magma with the two relations (and unit sets) exchanged.
    pub fn swapped(&self) -> Self {
        RelBiMagma {
            carrier: self.carrier.clone(),
            seq: self.par.clone(),
            par: self.seq.clone(),
            units_seq: self.units_par.clone(),
            units_par: self.units_seq.clone(),
        }
    }
}

/// A map from elements to natural numbers, meant to satisfy
/// `|x| = |y| + |z|` whenever `R^x_{yz}` and `|x| > 0` outside the units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading(pub Vec<usize>);

impl Grading {
    pub fn grade(&self, x: usize) -> usize {
        self.0[x]
    }
}
