use crate::error::{Error, Result};
use crate::relstruct::{is_unit_set, Carrier, RelBiMagma, RelMagma, TernaryRelation};
use crate::weights::{BiQuantale, FiniteLattice, FiniteQuantale, Table};

/// Largest carrier whose ternary relations are enumerated as masks.
pub const MAX_RELATION_POINTS: usize = 3;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Relabels relation masks (bit `x·n² + y·n + z`) under one permutation,
/// one `n²`-bit block at a time.
struct MaskPermuter {
    n: usize,
    perm: Vec<usize>,
    block: Vec<u64>,
}

impl MaskPermuter {
    fn new(n: usize, perm: Vec<usize>) -> Self {
        let bits = n * n;
        let block = (0..1u64 << bits)
            .map(|c| {
                (0..bits).filter(|i| c >> i & 1 == 1).fold(0u64, |acc, i| acc | 1 << (perm[i / n] * n + perm[i % n]))
            })
            .collect();
        MaskPermuter { n, perm, block }
    }

    #[inline]
    fn apply(&self, mask: u64) -> u64 {
        let bits = self.n * self.n;
        let low = (1u64 << bits) - 1;
        (0..self.n).fold(0, |acc, x| acc | self.block[(mask >> (x * bits) & low) as usize] << (self.perm[x] * bits))
    }
}

fn permuters(n: usize) -> Vec<MaskPermuter> {
    permutations(n).into_iter().filter(|p| p.iter().enumerate().any(|(i, &v)| i != v)).map(|p| MaskPermuter::new(n, p)).collect()
}

fn check_points(n: usize) -> Result<()> {
    if n > MAX_RELATION_POINTS {
        return Err(Error::PreconditionFailed(format!(
            "relations are enumerated on at most {MAX_RELATION_POINTS} points"
        )));
    }
    Ok(())
}

/// Masks of all ternary relations on `n ≤ 3` points, one per isomorphism
/// class (the least mask of each orbit), in increasing order.
pub fn relation_orbit_reps(n: usize) -> Result<impl Iterator<Item = u64>> {
    check_points(n)?;
    let ps = permuters(n);
    Ok((0..1u64 << (n * n * n)).filter(move |&m| ps.iter().all(|p| p.apply(m) >= m)))
}

/// Relational magmas on `n ≤ 2` points without units, up to isomorphism.
/// For three points use [`relation_orbit_reps`], which streams.
pub fn enumerate_relmagmas(n: usize) -> Result<Vec<RelMagma>> {
    if n > 2 {
        return Err(Error::PreconditionFailed("use relation_orbit_reps for three points".into()));
    }
    let c = Carrier::numbered(n);
    relation_orbit_reps(n)?
        .map(|m| RelMagma::new(c.clone(), TernaryRelation::from_mask(n, m), None))
        .collect()
}

/// Relational bi-magmas on `n ≤ 2` points without units, up to
/// isomorphism. A pair is kept when it is the least `(seq, par)` pair of
/// masks in its orbit.
pub fn enumerate_bimagmas(n: usize) -> Result<Vec<RelBiMagma>> {
    if n > 2 {
        return Err(Error::PreconditionFailed("bi-magmas are enumerated on at most 2 points".into()));
    }
    let ps = permuters(n);
    let c = Carrier::numbered(n);
    let total = 1u64 << (n * n * n);
    let mut out = Vec::new();
    for s in 0..total {
        for p in 0..total {
            if ps.iter().all(|q| (q.apply(s), q.apply(p)) >= (s, p)) {
                out.push(RelBiMagma::new(
                    c.clone(),
                    TernaryRelation::from_mask(n, s),
                    TernaryRelation::from_mask(n, p),
                    None,
                    None,
                )?);
            }
        }
    }
    Ok(out)
}

/// Every subset of the carrier satisfying the unit axioms for `r`.
pub fn unit_sets(r: &TernaryRelation) -> Vec<Vec<usize>> {
    let n = r.size();
    (0..1u32 << n)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|e| is_unit_set(r, e))
        .collect()
}

/// Relational interchange monoids on `n ≤ 2` points: both relations
/// associative, one shared unit set, and RI7. Unit sets are tried in
/// subset order, so a bi-magma can appear once per admissible unit set.
pub fn enumerate_interchange_monoids(n: usize) -> Result<Vec<RelBiMagma>> {
    use crate::relstruct::{assoc_counterexample, rel_interchange_counterexample};
    let mut out = Vec::new();
    for b in enumerate_bimagmas(n)? {
        if assoc_counterexample(&b.seq).is_some() || assoc_counterexample(&b.par).is_some() {
            continue;
        }
        if rel_interchange_counterexample(&b.seq, &b.par, 7)?.is_some() {
            continue;
        }
        for e in unit_sets(&b.seq) {
            if is_unit_set(&b.par, &e) {
                out.push(RelBiMagma { units_seq: Some(e.clone()), units_par: Some(e), ..b.clone() });
            }
        }
    }
    Ok(out)
}

fn chain(n: usize) -> Result<FiniteLattice> {
    FiniteLattice::chain((0..n).map(|i| i.to_string()))
}

/// Composition tables on the `n`-chain that preserve binary joins and
/// annihilate bottom. On a chain join is max, so these are exactly the
/// monotone tables with a zero row and column.
fn prequantale_tables(n: usize) -> Vec<Table> {
    if n == 0 {
        return Vec::new();
    }
    let inner = (n - 1) * (n - 1);
    let mut out = Vec::new();
    for mut code in 0..n.pow(inner as u32) {
        let mut cells = vec![0; n * n];
        for a in 1..n {
            for b in 1..n {
                cells[a * n + b] = code % n;
                code /= n;
            }
        }
        let monotone = (1..n).all(|a| {
            (1..n).all(|b| {
                (a + 1 >= n || cells[a * n + b] <= cells[(a + 1) * n + b])
                    && (b + 1 >= n || cells[a * n + b] <= cells[a * n + b + 1])
            })
        });
        if monotone {
            out.push(Table::new(n, cells).expect("cells in range"));
        }
    }
    out
}

/// Prequantales on the `n`-chain for `1 ≤ n ≤ 3`, each with its two-sided
/// unit when one exists. Chains have no non-trivial automorphisms, so no
/// two of these are isomorphic.
pub fn enumerate_quantales(n: usize) -> Result<Vec<FiniteQuantale>> {
    if !(1..=3).contains(&n) {
        return Err(Error::PreconditionFailed("weight tables are enumerated on 1 to 3 elements".into()));
    }
    let l = chain(n)?;
    prequantale_tables(n)
        .into_iter()
        .map(|t| {
            let mut q = FiniteQuantale::new(l.clone(), t, None)?;
            q.unit = q.find_unit();
            Ok(q)
        })
        .collect()
}

/// Bi-prequantales on the `n`-chain for `1 ≤ n ≤ 3`: every pair of
/// [`enumerate_quantales`] tables, units filled in where they exist.
pub fn enumerate_biquantales(n: usize) -> Result<Vec<BiQuantale>> {
    let qs = enumerate_quantales(n)?;
    let mut out = Vec::with_capacity(qs.len() * qs.len());
    for s in &qs {
        for p in &qs {
            out.push(BiQuantale::new(s.lattice.clone(), s.comp.clone(), p.comp.clone(), s.unit, p.unit)?);
        }
    }
    Ok(out)
}

/// Interchange quantales on the `n`-chain: both compositions associative
/// with one shared unit above bottom, and I7.
pub fn enumerate_interchange_quantales(n: usize) -> Result<Vec<BiQuantale>> {
    use crate::weights::check_algebraic_interchange;
    let mut out = Vec::new();
    for q in enumerate_biquantales(n)? {
        let shared = matches!((q.unit_seq, q.unit_par), (Some(a), Some(b)) if a == b && a != q.lattice.bottom());
        let assoc = |t: &Table| {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t.get(t.get(a, b), c) == t.get(a, t.get(b, c)))))
        };
        if shared && assoc(&q.seq) && assoc(&q.par) && check_algebraic_interchange(&q, 7)?.holds {
            out.push(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_counts() {
        // Burnside over the swap of two points: (256 + 16) / 2
        assert_eq!(relation_orbit_reps(2).unwrap().count(), 136);
        assert_eq!(enumerate_bimagmas(2).unwrap().len(), 32896);
        assert_eq!(enumerate_bimagmas(1).unwrap().len(), 4);
    }

    #[test]
    fn table_counts() {
        assert_eq!(enumerate_quantales(1).unwrap().len(), 1);
        assert_eq!(enumerate_quantales(2).unwrap().len(), 2);
        assert_eq!(enumerate_quantales(3).unwrap().len(), 20);
    }

    #[test]
    fn permuter_matches_triples() {
        let p = MaskPermuter::new(3, vec![2, 0, 1]);
        let r = TernaryRelation::new(3, [(0, 1, 2), (2, 2, 0)]).unwrap();
        let moved = TernaryRelation::new(3, [(2, 0, 1), (1, 1, 2)]).unwrap();
        assert_eq!(p.apply(r.to_mask()), moved.to_mask());
    }
}
