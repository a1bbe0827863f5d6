//! Finite duality between relational magmas and atomic Boolean
//! prequantales.
//!
//! An atomic Boolean prequantale is a finite powerset algebra with a binary
//! operator that preserves joins in each argument. Elements are stored as
//! bitmasks over the atoms and the operator is given on atoms, so
//! additivity holds by construction.
//!
//! * [`atom_structure`] reads a relational magma off the operator:
//!   `R^α_{βγ} ⟺ α ≤ β • γ`.
//! * [`complex_algebra`] goes back: the powerset of `X` with Boolean
//!   convolution `B ∗ C = {x | R^x_{yz}, y ∈ B, z ∈ C}`.
//!
//! The isomorphisms `σ a = {α | α ≤ a}` and `η x = {x}` are checked by
//! [`verify_sigma`] and [`verify_eta`]. Morphisms go contravariantly:
//! a bounded morphism `ρ` gives the preimage map [`preimage_map`] and an
//! algebra morphism `φ` gives the atom map [`lower_adjoint`].
//!
//! ```
//! use convalg::duality::{atom_structure, complex_algebra, verify_eta};
//! use convalg::relstruct::RelMagma;
//!
//! // the Cayley relation of the two-element group
//! let z2 = RelMagma::from_named(
//!     &["0", "1"],
//!     &[("0", "0", "0"), ("0", "1", "1"), ("1", "0", "1"), ("1", "1", "0")],
//!     None,
//! )
//! .unwrap();
//! let back = atom_structure(&complex_algebra(&z2).unwrap());
//! assert_eq!(back.rel, z2.rel);
//! assert!(verify_eta(&z2).unwrap().all_hold());
//! ```

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::correspond::relation_orbit_reps;
use crate::error::{Error, Result};
use crate::relstruct::{Carrier, RelMagma, TernaryRelation};
use crate::report::{LawCheck, LawReport};
use crate::weights::{FiniteLattice, FiniteQuantale, Table};

/// Atom sets are `u64` masks.
pub const MAX_ATOMS: usize = 63;

/// Algebras up to this many atoms can be turned into a [`FiniteQuantale`].
pub const MAX_TABULATED_ATOMS: usize = 6;

/// A finite atomic Boolean algebra with an additive binary operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicBoolPrequantale {
    atoms: Arc<Carrier>,
    /// `op[b * n + c]` is the atom set `b • c`.
    op: Vec<u64>,
}

impl AtomicBoolPrequantale {
    pub fn from_atom_table(atoms: Vec<String>, op: Vec<u64>) -> Result<Self> {
        let n = atoms.len();
        if n > MAX_ATOMS {
            return Err(Error::MalformedTable(format!("{n} atoms, at most {MAX_ATOMS} supported")));
        }
        if op.len() != n * n {
            return Err(Error::MalformedTable(format!("{} products for {n} atoms", op.len())));
        }
        Self::with_carrier(Carrier::new(atoms)?, op)
    }

    fn with_carrier(atoms: Arc<Carrier>, op: Vec<u64>) -> Result<Self> {
        let n = atoms.len();
        if let Some(m) = op.iter().find(|&&m| m >> n != 0) {
            return Err(Error::MalformedTable(format!("product {m:#b} names an atom outside {n}")));
        }
        Ok(AtomicBoolPrequantale { atoms, op })
    }

    /// Reads the atom table from an operator on all elements, checking that
    /// it is normal and preserves binary joins in each argument.
    pub fn from_element_op(atoms: Vec<String>, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        let n = atoms.len();
        if n > MAX_TABULATED_ATOMS {
            return Err(Error::MalformedTable(format!("{n} atoms, at most {MAX_TABULATED_ATOMS} tabulated")));
        }
        let all = 1u64 << n;
        for a in 0..all {
            if op(a, 0) != 0 || op(0, a) != 0 {
                return Err(Error::PreconditionFailed(format!("operator is not normal at {a:#b}")));
            }
            for b in 0..all {
                for c in 0..all {
                    if op(a | b, c) != op(a, c) | op(b, c) || op(c, a | b) != op(c, a) | op(c, b) {
                        return Err(Error::PreconditionFailed(format!(
                            "operator is not additive at ({a:#b}, {b:#b}, {c:#b})"
                        )));
                    }
                }
            }
        }
        let table = (0..n * n).map(|i| op(1 << (i / n), 1 << (i % n))).collect();
        Self::from_atom_table(atoms, table)
    }

    /// The algebra of an atomic Boolean quantale table. Fails if the
    /// lattice is not a powerset lattice or the composition is not additive.
    pub fn from_quantale(q: &FiniteQuantale) -> Result<Self> {
        let sigma = sigma_map(q)?;
        let n = q.lattice.len();
        let atoms: Vec<usize> = (0..n).filter(|&a| sigma[a].count_ones() == 1).collect();
        let mut back = vec![0; n];
        for (a, &m) in sigma.iter().enumerate() {
            back[m as usize] = a;
        }
        let names = atoms.iter().map(|&a| q.name(a).to_string()).collect();
        Self::from_element_op(names, |a, b| sigma[q.comp(back[a as usize], back[b as usize])])
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[String] {
        self.atoms.names()
    }

    /// The top element, all atoms.
    pub fn top(&self) -> u64 {
        (1u64 << self.atoms.len()) - 1
    }

    pub fn atom_product(&self, b: usize, c: usize) -> u64 {
        self.op[b * self.atoms.len() + c]
    }

    /// The operator extended additively to all elements.
    pub fn compose(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for x in bits(a) {
            for y in bits(b) {
                out |= self.atom_product(x, y);
            }
        }
        out
    }

    pub fn render(&self, a: u64) -> String {
        let names: Vec<&str> = bits(a).map(|i| self.atoms.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// The algebra as a quantale table over the powerset lattice; element
    /// `i` is the atom set with mask `i`.
    pub fn to_quantale(&self) -> Result<FiniteQuantale> {
        let n = self.atoms.len();
        if n > MAX_TABULATED_ATOMS {
            return Err(Error::MalformedTable(format!("{n} atoms, at most {MAX_TABULATED_ATOMS} tabulated")));
        }
        let names: Vec<&str> = self.atoms().iter().map(String::as_str).collect();
        let lattice = FiniteLattice::powerset(&names)?;
        let comp = Table::from_fn(1 << n, |a, b| self.compose(a as u64, b as u64) as usize);
        let mut q = FiniteQuantale::new(lattice, comp, None)?;
        q.unit = q.find_unit();
        Ok(q)
    }
}

impl fmt::Display for AtomicBoolPrequantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "atoms {{{}}}", self.atoms().join(","))?;
        let n = self.atoms.len();
        for b in 0..n {
            for c in 0..n {
                let (nb, nc) = (self.atoms.name(b), self.atoms.name(c));
                write!(f, "; {nb}•{nc} = {}", self.render(self.atom_product(b, c)))?;
            }
        }
        Ok(())
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// The atom structure: atoms with `R^α_{βγ} ⟺ α ≤ β • γ`.
pub fn atom_structure(q: &AtomicBoolPrequantale) -> RelMagma {
    let n = q.atom_count();
    let mut triples = Vec::new();
    for b in 0..n {
        for c in 0..n {
            triples.extend(bits(q.atom_product(b, c)).map(|a| (a, b, c)));
        }
    }
    let rel = TernaryRelation::new(n, triples).expect("atoms in range");
    RelMagma::new(q.atoms.clone(), rel, None).expect("consistent sizes")
}

/// The complex algebra: subsets of `X` with Boolean convolution. Atoms are
/// the singletons, named after the points.
pub fn complex_algebra(x: &RelMagma) -> Result<AtomicBoolPrequantale> {
    let n = x.len();
    let mut op = vec![0u64; n * n];
    for (a, b, c) in x.rel.triples() {
        op[b * n + c] |= 1 << a;
    }
    AtomicBoolPrequantale::with_carrier(x.carrier.clone(), op)
}

/// `σ a` as an atom mask for every element of `q`, after checking that the
/// lattice is a powerset lattice with `σ` an order isomorphism.
fn sigma_map(q: &FiniteQuantale) -> Result<Vec<u64>> {
    let l = &q.lattice;
    let n = l.len();
    let bot = l.bottom();
    let atoms: Vec<usize> = (0..n)
        .filter(|&a| a != bot && (0..n).all(|b| b == a || b == bot || !l.leq(b, a)))
        .collect();
    if atoms.len() > MAX_TABULATED_ATOMS {
        return Err(Error::NotALattice(format!("{} atoms, at most {MAX_TABULATED_ATOMS} supported", atoms.len())));
    }
    let sigma: Vec<u64> = (0..n)
        .map(|a| atoms.iter().enumerate().filter(|&(_, &at)| l.leq(at, a)).map(|(i, _)| 1u64 << i).sum())
        .collect();
    let mut seen = vec![false; 1 << atoms.len()];
    for &m in &sigma {
        seen[m as usize] = true;
    }
    if n != 1 << atoms.len() || seen.iter().any(|s| !s) {
        return Err(Error::NotALattice("not a finite atomic Boolean lattice".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if l.leq(a, b) != (sigma[a] & !sigma[b] == 0) {
                return Err(Error::NotALattice(format!(
                    "order of {} and {} is not the order of their atom sets",
                    l.name(a),
                    l.name(b)
                )));
            }
        }
    }
    Ok(sigma)
}

/// Checks that `σ a = {α | α ≤ a}` is an isomorphism from `q` onto the
/// complex algebra of its atom structure.
///
/// Checks: `atomic-boolean` (the lattice is a powerset lattice),
/// `additive`, `sigma-bijective`, `sigma-order` (both directions),
/// `sigma-operator` (`σ (a • b) = σ a ∗ σ b`). Later checks are skipped
/// once an earlier one fails.
pub fn verify_sigma(q: &FiniteQuantale) -> Result<LawReport> {
    let mut r = LawReport::new();
    let sigma = match sigma_map(q) {
        Ok(s) => {
            r.push(LawCheck::pass("atomic-boolean"));
            s
        }
        Err(e) => {
            r.push(LawCheck::fail("atomic-boolean", vec![e.to_string()]));
            return Ok(r);
        }
    };
    let algebra = match AtomicBoolPrequantale::from_quantale(q) {
        Ok(a) => {
            r.push(LawCheck::pass("additive"));
            a
        }
        Err(e) => {
            r.push(LawCheck::fail("additive", vec![e.to_string()]));
            return Ok(r);
        }
    };
    let n = q.len();
    let image_size = {
        let mut v = sigma.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    let bijective = image_size == n && n == 1 << algebra.atom_count();
    r.push(LawCheck::from_counterexample("sigma-bijective", (!bijective).then(|| vec![format!("{image_size} of {n}")])));
    let order = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| q.lattice.leq(a, b) != (sigma[a] & !sigma[b] == 0))
        .map(|(a, b)| vec![q.name(a).to_string(), q.name(b).to_string()]);
    r.push(LawCheck::from_counterexample("sigma-order", order));
    let dual = complex_algebra(&atom_structure(&algebra))?;
    let op = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| sigma[q.comp(a, b)] != dual.compose(sigma[a], sigma[b]))
        .map(|(a, b)| vec![q.name(a).to_string(), q.name(b).to_string()]);
    r.push(LawCheck::from_counterexample("sigma-operator", op));
    Ok(r)
}

/// Checks that `η x = {x}` is an isomorphism from `x` onto the atom
/// structure of its complex algebra: `eta-bijective`, and `eta-morphism`
/// and `eta-inverse-morphism` for the relation in both directions.
pub fn verify_eta(x: &RelMagma) -> Result<LawReport> {
    let dual = atom_structure(&complex_algebra(x)?);
    // the atom {p} of the complex algebra has index p
    let eta: Vec<usize> = (0..x.len()).collect();
    let mut r = LawReport::new();
    let mut hit = vec![false; dual.len()];
    for &e in &eta {
        hit[e] = true;
    }
    let bijective = dual.len() == x.len() && hit.iter().all(|&h| h);
    r.push(LawCheck::from_counterexample("eta-bijective", (!bijective).then(|| vec![format!("{} atoms", dual.len())])));
    let forward = RelMorphism { source: x, target: &dual, map: eta.clone() };
    r.push(renamed(morphism_clause(&forward), "eta-morphism"));
    let mut inv = vec![0; eta.len()];
    for (p, &e) in eta.iter().enumerate() {
        inv[e] = p;
    }
    let backward = RelMorphism { source: &dual, target: x, map: inv };
    r.push(renamed(morphism_clause(&backward), "eta-inverse-morphism"));
    Ok(r)
}

fn renamed(mut c: LawCheck, law: &str) -> LawCheck {
    c.law = law.to_string();
    c
}

/// A vertex map between relational magmas.
#[derive(Debug, Clone)]
pub struct RelMorphism<'a> {
    pub source: &'a RelMagma,
    pub target: &'a RelMagma,
    pub map: Vec<usize>,
}

impl<'a> RelMorphism<'a> {
    pub fn new(source: &'a RelMagma, target: &'a RelMagma, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::CarrierMismatch(format!("map has {} entries for {} points", map.len(), source.len())));
        }
        if let Some(&y) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::CarrierMismatch(format!("image {y} outside a target of {}", target.len())));
        }
        Ok(RelMorphism { source, target, map })
    }

    pub fn identity(x: &'a RelMagma) -> Self {
        RelMorphism { source: x, target: x, map: (0..x.len()).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RelMorphism<'a>) -> Result<RelMorphism<'a>> {
        if self.target.len() != other.source.len() {
            return Err(Error::CarrierMismatch("maps do not compose".into()));
        }
        Ok(RelMorphism { source: self.source, target: other.target, map: self.map.iter().map(|&y| other.map[y]).collect() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MorphismKind {
    NotAMorphism,
    Morphism,
    BoundedMorphism,
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::NotAMorphism => "not a morphism",
            MorphismKind::Morphism => "morphism",
            MorphismKind::BoundedMorphism => "bounded morphism",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismCheck {
    pub kind: MorphismKind,
    /// `R^x_{yz} ⇒ S^{ρx}_{ρy ρz}`.
    pub morphism: LawCheck,
    /// `S^{ρx}_{yz} ⇒ ∃u v. ρu = y ∧ ρv = z ∧ R^x_{uv}`.
    pub bounded: LawCheck,
}

fn morphism_clause(m: &RelMorphism) -> LawCheck {
    let rho = &m.map;
    let cx = m
        .source
        .rel
        .triples()
        .find(|&(x, y, z)| !m.target.rel.contains(rho[x], rho[y], rho[z]))
        .map(|(x, y, z)| m.source.carrier.render(&[x, y, z]));
    LawCheck::from_counterexample("morphism", cx)
}

fn bounded_clause(m: &RelMorphism) -> LawCheck {
    let rho = &m.map;
    let n = m.target.len();
    let mut cx = None;
    'outer: for x in 0..m.source.len() {
        for y in 0..n {
            for z in 0..n {
                if m.target.rel.contains(rho[x], y, z)
                    && !m.source.rel.decompositions(x).any(|(u, v)| rho[u] == y && rho[v] == z)
                {
                    cx = Some(vec![
                        m.source.name(x).to_string(),
                        m.target.name(y).to_string(),
                        m.target.name(z).to_string(),
                    ]);
                    break 'outer;
                }
            }
        }
    }
    LawCheck::from_counterexample("bounded", cx)
}

pub fn check_morphism(m: &RelMorphism) -> MorphismCheck {
    let morphism = morphism_clause(m);
    let bounded = bounded_clause(m);
    let kind = match (morphism.holds, bounded.holds) {
        (false, _) => MorphismKind::NotAMorphism,
        (true, false) => MorphismKind::Morphism,
        (true, true) => MorphismKind::BoundedMorphism,
    };
    MorphismCheck { kind, morphism, bounded }
}

/// `ρ⁺ B = {x | ρ x ∈ B}` for a target subset `B`.
pub fn preimage(m: &RelMorphism, b: u64) -> u64 {
    m.map.iter().enumerate().filter(|&(_, &y)| b >> y & 1 == 1).map(|(x, _)| 1u64 << x).sum()
}

/// A map between atomic Boolean prequantales, tabulated on all elements.
#[derive(Debug, Clone)]
pub struct AlgebraMap<'a> {
    pub source: &'a AtomicBoolPrequantale,
    pub target: &'a AtomicBoolPrequantale,
    /// `map[a]` is the image of the element with mask `a`.
    pub map: Vec<u64>,
}

impl<'a> AlgebraMap<'a> {
    pub fn identity(q: &'a AtomicBoolPrequantale) -> Self {
        AlgebraMap { source: q, target: q, map: (0..=q.top()).collect() }
    }

    pub fn apply(&self, a: u64) -> u64 {
        self.map[a as usize]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraMap<'a>) -> AlgebraMap<'a> {
        AlgebraMap { source: self.source, target: other.target, map: self.map.iter().map(|&b| other.apply(b)).collect() }
    }
}

/// `ρ⁺` as a map from the complex algebra of the target to that of the
/// source. The algebras are passed in so the result can borrow them.
pub fn preimage_map<'a>(
    m: &RelMorphism,
    source_algebra: &'a AtomicBoolPrequantale,
    target_algebra: &'a AtomicBoolPrequantale,
) -> Result<AlgebraMap<'a>> {
    if target_algebra.atom_count() != m.target.len() || source_algebra.atom_count() != m.source.len() {
        return Err(Error::CarrierMismatch("algebras do not match the morphism".into()));
    }
    if m.target.len() > MAX_TABULATED_ATOMS {
        return Err(Error::MalformedTable(format!("{} points, at most {MAX_TABULATED_ATOMS} tabulated", m.target.len())));
    }
    let map = (0..=target_algebra.top()).map(|b| preimage(m, b)).collect();
    Ok(AlgebraMap { source: target_algebra, target: source_algebra, map })
}

/// Checks that a map preserves joins, complements and the operator:
/// `bottom`, `join`, `complement`, `operator`.
pub fn check_algebra_morphism(phi: &AlgebraMap) -> LawReport {
    let (s, t) = (phi.source, phi.target);
    let all = s.top();
    let mut r = LawReport::new();
    r.push(LawCheck::from_counterexample("bottom", (phi.apply(0) != 0).then(|| vec![s.render(0)])));
    let pairs = || (0..=all).flat_map(move |a| (0..=all).map(move |b| (a, b)));
    let join = pairs().find(|&(a, b)| phi.apply(a | b) != phi.apply(a) | phi.apply(b));
    r.push(LawCheck::from_counterexample("join", join.map(|(a, b)| vec![s.render(a), s.render(b)])));
    let comp = (0..=all).find(|&a| phi.apply(all & !a) != t.top() & !phi.apply(a));
    r.push(LawCheck::from_counterexample("complement", comp.map(|a| vec![s.render(a)])));
    let op = pairs().find(|&(a, b)| phi.apply(s.compose(a, b)) != t.compose(phi.apply(a), phi.apply(b)));
    r.push(LawCheck::from_counterexample("operator", op.map(|(a, b)| vec![s.render(a), s.render(b)])));
    r
}

/// The two inclusions of `ρ⁺ B₁ ∗ ρ⁺ B₂` against `ρ⁺ (B₁ ∗ B₂)`:
/// `preimage-lax` (⊆, from the morphism clause) and `preimage-oplax`
/// (⊇, from boundedness).
pub fn check_preimage_operator(m: &RelMorphism) -> Result<(LawCheck, LawCheck)> {
    let sa = complex_algebra(m.source)?;
    let ta = complex_algebra(m.target)?;
    let phi = preimage_map(m, &sa, &ta)?;
    let all = ta.top();
    let (mut lax, mut oplax) = (None, None);
    for b1 in 0..=all {
        for b2 in 0..=all {
            let lhs = sa.compose(phi.apply(b1), phi.apply(b2));
            let rhs = phi.apply(ta.compose(b1, b2));
            if lax.is_none() && lhs & !rhs != 0 {
                lax = Some(vec![ta.render(b1), ta.render(b2)]);
            }
            if oplax.is_none() && rhs & !lhs != 0 {
                oplax = Some(vec![ta.render(b1), ta.render(b2)]);
            }
        }
    }
    Ok((LawCheck::from_counterexample("preimage-lax", lax), LawCheck::from_counterexample("preimage-oplax", oplax)))
}

/// `φ₊ β = ⋀ {a | β ≤ φ a}` for every atom `β` of the target, as an atom
/// index of the source. Fails if some `φ₊ β` is not an atom.
pub fn lower_adjoint(phi: &AlgebraMap) -> Result<Vec<usize>> {
    (0..phi.target.atom_count())
        .map(|beta| {
            let meet = (0..=phi.source.top())
                .filter(|&a| phi.apply(a) >> beta & 1 == 1)
                .fold(phi.source.top(), |acc, a| acc & a);
            if meet.count_ones() == 1 {
                Ok(meet.trailing_zeros() as usize)
            } else {
                Err(Error::PreconditionFailed(format!(
                    "lower adjoint of atom {} is {}, not an atom",
                    phi.target.atoms.name(beta),
                    phi.source.render(meet)
                )))
            }
        })
        .collect()
}

/// The square `σ_{Q'} ∘ φ = (φ₊)⁺ ∘ σ_Q` for an algebra morphism `φ`.
/// Elements are atom sets, so `σ` is the identity on masks and `(φ₊)⁺`
/// is preimage under the atom map `φ₊`.
pub fn check_sigma_square(phi: &AlgebraMap) -> Result<LawCheck> {
    let lower = lower_adjoint(phi)?;
    let lifted = |a: u64| -> u64 { lower.iter().enumerate().filter(|&(_, &l)| a >> l & 1 == 1).map(|(b, _)| 1u64 << b).sum() };
    let cx = (0..=phi.source.top()).find(|&a| phi.apply(a) != lifted(a)).map(|a| vec![phi.source.render(a)]);
    Ok(LawCheck::from_counterexample("sigma-natural", cx))
}

/// The square `η_{X'} ∘ ρ = (ρ⁺)₊ ∘ η_X` for a bounded morphism `ρ`.
pub fn check_eta_square(m: &RelMorphism) -> Result<LawCheck> {
    let sa = complex_algebra(m.source)?;
    let ta = complex_algebra(m.target)?;
    let phi = preimage_map(m, &sa, &ta)?;
    // (ρ⁺)₊ sends the atom {x} of X⁺ to an atom of X'⁺
    let lower = lower_adjoint(&phi)?;
    let cx = (0..m.source.len()).find(|&x| lower[x] != m.map[x]).map(|x| vec![m.source.name(x).to_string()]);
    Ok(LawCheck::from_counterexample("eta-natural", cx))
}

/// `(ρ₂ ∘ ρ₁)⁺ = ρ₁⁺ ∘ ρ₂⁺` and `id⁺ = id` on the given maps.
pub fn check_preimage_functor(r1: &RelMorphism, r2: &RelMorphism) -> Result<LawReport> {
    let composite = r1.then(r2)?;
    let (a1, a2, a3) = (complex_algebra(r1.source)?, complex_algebra(r2.source)?, complex_algebra(r2.target)?);
    let p1 = preimage_map(r1, &a1, &a2)?;
    let p2 = preimage_map(r2, &a2, &a3)?;
    let pc = preimage_map(&composite, &a1, &a3)?;
    let mut r = LawReport::new();
    let cx = (0..=a3.top()).find(|&b| pc.apply(b) != p1.apply(p2.apply(b))).map(|b| vec![a3.render(b)]);
    r.push(LawCheck::from_counterexample("preimage-composition", cx));
    let id = preimage_map(&RelMorphism::identity(r1.source), &a1, &a1)?;
    let cx = (0..=a1.top()).find(|&b| id.apply(b) != b).map(|b| vec![a1.render(b)]);
    r.push(LawCheck::from_counterexample("preimage-identity", cx));
    Ok(r)
}

/// `(φ₂ ∘ φ₁)₊ = φ₁₊ ∘ φ₂₊` and `id₊ = id` on the given maps.
pub fn check_atom_functor(f1: &AlgebraMap, f2: &AlgebraMap) -> Result<LawReport> {
    let composite = f1.then(f2);
    let (l1, l2, lc) = (lower_adjoint(f1)?, lower_adjoint(f2)?, lower_adjoint(&composite)?);
    let mut r = LawReport::new();
    let cx = (0..lc.len()).find(|&b| lc[b] != l1[l2[b]]).map(|b| vec![f2.target.atoms.name(b).to_string()]);
    r.push(LawCheck::from_counterexample("atoms-composition", cx));
    let id = lower_adjoint(&AlgebraMap::identity(f1.source))?;
    let cx = (0..id.len()).find(|&a| id[a] != a).map(|a| vec![f1.source.atoms.name(a).to_string()]);
    r.push(LawCheck::from_counterexample("atoms-identity", cx));
    Ok(r)
}

/// Atomic Boolean prequantales with `k` atoms up to relabelling of atoms:
/// one atom table per orbit, the least under the table encoding.
pub fn enumerate_atom_algebras(k: usize) -> Result<Vec<AtomicBoolPrequantale>> {
    if k > 2 {
        return Err(Error::PreconditionFailed("atom tables are enumerated for at most 2 atoms".into()));
    }
    let names: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let cells = k * k;
    let values = 1u64 << k;
    let encode = |t: &[u64]| t.iter().fold(0u64, |acc, &v| acc * values + v);
    let perms: Vec<Vec<usize>> = if k == 2 { vec![vec![1, 0]] } else { Vec::new() };
    let permute_mask = |p: &[usize], m: u64| bits(m).map(|i| 1u64 << p[i]).sum::<u64>();
    let mut out = Vec::new();
    for code in 0..values.pow(cells as u32) {
        let mut c = code;
        let mut table = vec![0u64; cells];
        for cell in table.iter_mut().rev() {
            *cell = c % values;
            c /= values;
        }
        let least = perms.iter().all(|p| {
            let mut image = vec![0u64; cells];
            for b in 0..k {
                for cc in 0..k {
                    image[p[b] * k + p[cc]] = permute_mask(p, table[b * k + cc]);
                }
            }
            encode(&image) >= code
        });
        if least {
            out.push(AtomicBoolPrequantale::from_atom_table(names.clone(), table)?);
        }
    }
    Ok(out)
}

/// Maps between two algebras that preserve joins and complements, one per
/// map of atoms `At Q' → At Q`, tabulated as preimage.
pub fn boolean_homomorphisms<'a>(
    source: &'a AtomicBoolPrequantale,
    target: &'a AtomicBoolPrequantale,
) -> Vec<AlgebraMap<'a>> {
    let (n, m) = (source.atom_count(), target.atom_count());
    if n == 0 && m > 0 {
        return Vec::new();
    }
    let count = n.pow(m as u32);
    (0..count)
        .map(|mut code| {
            let f: Vec<usize> = (0..m)
                .map(|_| {
                    let v = code % n.max(1);
                    code /= n.max(1);
                    v
                })
                .collect();
            let map = (0..=source.top())
                .map(|a| f.iter().enumerate().filter(|&(_, &x)| a >> x & 1 == 1).map(|(b, _)| 1u64 << b).sum())
                .collect();
            AlgebraMap { source, target, map }
        })
        .collect()
}

/// Counts from an exhaustive duality sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DualitySweep {
    pub checked: usize,
    /// Instances where a check failed, rendered.
    pub failures: Vec<String>,
}

impl DualitySweep {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, subject: impl FnOnce() -> String, r: &LawReport) {
        self.checked += 1;
        if !r.all_hold() {
            let failed: Vec<String> = r.failures().map(|c| c.to_string()).collect();
            self.failures.push(format!("{}: {}", subject(), failed.join("; ")));
        }
    }
}

/// `σ` over every algebra with at most `max_atoms` atoms.
pub fn sweep_sigma(max_atoms: usize) -> Result<DualitySweep> {
    let mut s = DualitySweep::default();
    for k in 0..=max_atoms {
        for a in enumerate_atom_algebras(k)? {
            let r = verify_sigma(&a.to_quantale()?)?;
            s.record(|| a.to_string(), &r);
        }
    }
    Ok(s)
}

/// `η` over every relational magma with at most `max_points` points, up
/// to isomorphism. Three points is about 22 million magmas.
pub fn sweep_eta(max_points: usize) -> Result<DualitySweep> {
    let mut s = DualitySweep::default();
    for n in 0..=max_points {
        let c = Carrier::numbered(n);
        for mask in relation_orbit_reps(n)? {
            let x = RelMagma::new(c.clone(), TernaryRelation::from_mask(n, mask), None)?;
            let r = verify_eta(&x)?;
            s.record(|| format!("{n} points, relation {mask:#x}"), &r);
        }
    }
    Ok(s)
}

/// Both naturality squares over every morphism between structures of at
/// most `max_size` points or atoms: bounded morphisms of magmas up to
/// isomorphism for `η`, and operator-preserving Boolean homomorphisms of
/// enumerated algebras for `σ`. `checked` counts squares.
pub fn sweep_naturality(max_size: usize) -> Result<DualitySweep> {
    if max_size > 2 {
        return Err(Error::PreconditionFailed("naturality is swept on at most 2 points".into()));
    }
    let mut s = DualitySweep::default();
    let mut magmas = Vec::new();
    for n in 0..=max_size {
        let c = Carrier::numbered(n);
        for mask in relation_orbit_reps(n)? {
            magmas.push(RelMagma::new(c.clone(), TernaryRelation::from_mask(n, mask), None)?);
        }
    }
    for x in &magmas {
        for y in &magmas {
            for map in all_maps(x.len(), y.len()) {
                let m = RelMorphism { source: x, target: y, map };
                if check_morphism(&m).kind != MorphismKind::BoundedMorphism {
                    continue;
                }
                let mut r = LawReport::new();
                r.push(check_eta_square(&m)?);
                s.record(|| format!("ρ = {:?}", m.map), &r);
            }
        }
    }
    let mut algebras = Vec::new();
    for k in 0..=max_size {
        algebras.extend(enumerate_atom_algebras(k)?);
    }
    for q in &algebras {
        for q2 in &algebras {
            for phi in boolean_homomorphisms(q, q2) {
                if !check_algebra_morphism(&phi).all_hold() {
                    continue;
                }
                let mut r = LawReport::new();
                r.push(check_sigma_square(&phi)?);
                s.record(|| format!("φ = {:?} from {q} to {q2}", phi.map), &r);
            }
        }
    }
    Ok(s)
}

/// Every function from `n` points to `m` points.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..m.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect()
        })
        .collect()
}
