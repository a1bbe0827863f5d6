use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::at;
use super::enumerate::{enumerate_bimagmas, enumerate_biquantales, enumerate_quantales, enumerate_relmagmas, unit_sets};
use super::lift::Space;
use crate::convolution::{LiftedAlgebra, LiftedLaw};
use crate::error::{Error, Result};
use crate::relstruct::{
    check_relational_interchange, rel_degeneracy_witness, rel_interchange_counterexample, RelBiMagma, RelMagma,
    TernaryRelation,
};
use crate::report::LawCheck;
use crate::weights::{
    check_algebraic_interchange, degeneracy_for_law, degeneracy_witness, interchange_counterexample, BiQuantale,
    FiniteQuantale, Table,
};
use crate::Which;

/// Which side condition the search drops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// The degeneracy condition on `Q` when reflecting RIk to `X`.
    NoD,
    /// The relational degeneracy condition on `X` when reflecting Ik to `Q`.
    NoRd,
    /// `1 ≠ 0` in `Q` or a non-empty unit support when reflecting units.
    NoUnit,
}

impl Scope {
    pub const ALL: [Scope; 3] = [Scope::NoD, Scope::NoRd, Scope::NoUnit];
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::NoD => "no-d",
            Scope::NoRd => "no-rd",
            Scope::NoUnit => "no-unit",
        })
    }
}

impl FromStr for Scope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "no-d" => Ok(Scope::NoD),
            "no-rd" => Ok(Scope::NoRd),
            "no-unit" => Ok(Scope::NoUnit),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown scope `{s}` (expected no-d, no-rd or no-unit)") }),
        }
    }
}

/// An instance where a law holds in `Q^X` but fails in `X` or `Q` because
/// the side condition named in `dropped` does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchWitness {
    pub scope: Scope,
    pub law: String,
    pub dropped: String,
    /// A named family the instance belongs to: `singleton-q`,
    /// `all-zero-product`, `empty-relation` or `empty-carrier`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    pub base: String,
    pub weights: String,
    /// The law failing in the base or in the weights.
    pub failure: LawCheck,
}

impl fmt::Display for SearchWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: without {}", self.scope, self.law, self.dropped)?;
        if let Some(c) = &self.construction {
            write!(f, " ({c})")?;
        }
        write!(f, "\n  {}\n  {}\n  {} fails", self.base, self.weights, self.failure.law)?;
        if let Some(w) = &self.failure.witness {
            if !w.is_empty() {
                write!(f, " at ({})", w.join(", "))?;
            }
        }
        Ok(())
    }
}

fn render_relation(names: &[String], r: &TernaryRelation) -> String {
    let ts: Vec<String> =
        r.triples().map(|(x, y, z)| format!("({},{},{})", names[x], names[y], names[z])).collect();
    format!("{{{}}}", ts.join(" "))
}

fn render_units(names: &[String], e: &Option<Vec<usize>>) -> String {
    match e {
        None => String::new(),
        Some(e) => format!(" E {{{}}}", e.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(",")),
    }
}

/// One-line summary of a bi-magma: carrier, then the triples `(x,y,z)`
/// standing for `R^x_{yz}`.
pub fn describe_bimagma(x: &RelBiMagma) -> String {
    let names = x.carrier.names();
    format!(
        "X = {{{}}}; seq {}{}; par {}{}",
        names.join(","),
        render_relation(names, &x.seq),
        render_units(names, &x.units_seq),
        render_relation(names, &x.par),
        render_units(names, &x.units_par),
    )
}

fn describe_magma(x: &RelMagma) -> String {
    let names = x.carrier.names();
    format!("X = {{{}}}; R {}{}", names.join(","), render_relation(names, &x.rel), render_units(names, &x.units))
}

fn render_table(q: &crate::weights::FiniteLattice, t: &Table) -> String {
    let n = q.len();
    let rows: Vec<String> =
        (0..n).map(|a| (0..n).map(|b| q.name(t.get(a, b)).to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join(" / "))
}

fn render_lattice(q: &crate::weights::FiniteLattice) -> String {
    if q.is_chain() {
        let mut xs: Vec<usize> = (0..q.len()).collect();
        xs.sort_by(|&a, &b| if q.leq(a, b) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater });
        xs.iter().map(|&a| q.name(a)).collect::<Vec<_>>().join("<")
    } else {
        q.names().join(",")
    }
}

/// One-line summary of a bi-quantale: the lattice, then each composition
/// table row by row.
pub fn describe_biquantale(q: &BiQuantale) -> String {
    let unit = |u: Option<usize>| u.map_or("none".to_string(), |u| q.name(u).to_string());
    format!(
        "Q = {}; seq {} unit {}; par {} unit {}",
        render_lattice(&q.lattice),
        render_table(&q.lattice, &q.seq),
        unit(q.unit_seq),
        render_table(&q.lattice, &q.par),
        unit(q.unit_par),
    )
}

fn describe_quantale(q: &FiniteQuantale) -> String {
    let unit = q.unit.map_or("none".to_string(), |u| q.name(u).to_string());
    format!("Q = {}; comp {} unit {}", render_lattice(&q.lattice), render_table(&q.lattice, &q.comp), unit)
}

fn all_zero(q: &BiQuantale) -> bool {
    let (n, z) = (q.len(), q.lattice.bottom());
    (0..n).all(|a| (0..n).all(|b| q.seq.get(a, b) == z && q.par.get(a, b) == z))
}

fn construction(x: &RelBiMagma, q: &BiQuantale) -> Option<String> {
    if q.len() == 1 {
        Some("singleton-q".into())
    } else if all_zero(q) {
        Some("all-zero-product".into())
    } else if x.seq.is_empty() && x.par.is_empty() {
        Some("empty-relation".into())
    } else {
        None
    }
}

/// Tracks the number of `(X, Q)` candidates examined.
struct Counter {
    used: usize,
    budget: usize,
}

impl Counter {
    fn take(&mut self) -> bool {
        if self.used >= self.budget {
            return false;
        }
        self.used += 1;
        true
    }
}

fn weights_up_to_two() -> Result<Vec<BiQuantale>> {
    let mut qs = enumerate_biquantales(1)?;
    qs.extend(enumerate_biquantales(2)?);
    Ok(qs)
}

fn bimagmas_up_to_two() -> Result<Vec<RelBiMagma>> {
    let mut xs = enumerate_bimagmas(1)?;
    xs.extend(enumerate_bimagmas(2)?);
    Ok(xs)
}

/// Searches bi-magmas on one or two points and bi-prequantales on one or
/// two elements, up to isomorphism, for instances where a law holds in
/// `Q^X` (on the whole function space) but fails in `X` or `Q` once the
/// side condition of `scope` is dropped. For `no-rd` the weights also range
/// over three-element chains: on two elements only I1 and I2 can fail.
///
/// At most `budget` `(X, Q)` pairs are examined. One witness is kept per
/// law and construction, so the singleton and all-zero weight algebras
/// each contribute their own witnesses. Witnesses are deterministic.
pub fn search_counterexamples(scope: Scope, budget: usize) -> Result<Vec<SearchWitness>> {
    let mut counter = Counter { used: 0, budget };
    match scope {
        Scope::NoD => search_no_d(&mut counter),
        Scope::NoRd => search_no_rd(&mut counter),
        Scope::NoUnit => search_no_unit(&mut counter),
    }
}

fn search_no_d(counter: &mut Counter) -> Result<Vec<SearchWitness>> {
    let qs = weights_up_to_two()?;
    let xs = bimagmas_up_to_two()?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    'weights: for q in &qs {
        let dom: Vec<usize> = (0..q.len()).collect();
        let open: Vec<usize> = (1..=7)
            .filter(|&k| degeneracy_witness(q, degeneracy_for_law(k).unwrap(), &dom).unwrap().is_none())
            .collect();
        if open.is_empty() {
            continue;
        }
        for x in &xs {
            if !counter.take() {
                break 'weights;
            }
            let kind = construction(x, q);
            let pending: Vec<usize> = open
                .iter()
                .copied()
                .filter(|&k| !seen.contains(&(k, kind.clone())))
                .filter(|&k| rel_interchange_counterexample(&x.seq, &x.par, k).unwrap().is_some())
                .collect();
            if pending.is_empty() {
                continue;
            }
            let l = LiftedAlgebra::new(x.clone(), q.clone());
            let space = Space::new(&l);
            for k in pending {
                if space.law(LiftedLaw::Interchange(k))?.holds {
                    seen.insert((k, kind.clone()));
                    out.push(SearchWitness {
                        scope: Scope::NoD,
                        law: format!("ri{k}"),
                        dropped: format!("Q:d{}", degeneracy_for_law(k)?),
                        construction: kind.clone(),
                        base: describe_bimagma(x),
                        weights: describe_biquantale(q),
                        failure: at("X", check_relational_interchange(x, k)?),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.law.cmp(&b.law));
    Ok(out)
}

fn search_no_rd(counter: &mut Counter) -> Result<Vec<SearchWitness>> {
    let mut qs = weights_up_to_two()?;
    qs.extend(enumerate_biquantales(3)?);
    let xs = bimagmas_up_to_two()?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    'weights: for q in &qs {
        let dom: Vec<usize> = (0..q.len()).collect();
        let failing: Vec<usize> =
            (1..=7).filter(|&k| interchange_counterexample(q, k, &dom).unwrap().is_some()).collect();
        if failing.is_empty() {
            continue;
        }
        for x in &xs {
            if !counter.take() {
                break 'weights;
            }
            let kind = construction(x, q);
            let pending: Vec<usize> = failing
                .iter()
                .copied()
                .filter(|&k| !seen.contains(&(k, kind.clone())))
                .filter(|&k| rel_degeneracy_witness(&x.seq, &x.par, degeneracy_for_law(k).unwrap()).unwrap().is_none())
                .collect();
            if pending.is_empty() {
                continue;
            }
            let l = LiftedAlgebra::new(x.clone(), q.clone());
            let space = Space::new(&l);
            for k in pending {
                if space.law(LiftedLaw::Interchange(k))?.holds {
                    seen.insert((k, kind.clone()));
                    out.push(SearchWitness {
                        scope: Scope::NoRd,
                        law: format!("i{k}"),
                        dropped: format!("X:rd{}", degeneracy_for_law(k)?),
                        construction: kind.clone(),
                        base: describe_bimagma(x),
                        weights: describe_biquantale(q),
                        failure: at("Q", check_algebraic_interchange(q, k)?),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.law.cmp(&b.law));
    Ok(out)
}

fn search_no_unit(counter: &mut Counter) -> Result<Vec<SearchWitness>> {
    let mut qs = enumerate_quantales(1)?;
    qs.extend(enumerate_quantales(2)?);
    let mut xs = Vec::new();
    for n in 0..=2 {
        xs.extend(enumerate_relmagmas(n)?);
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    'weights: for (qi, q) in qs.iter().enumerate() {
        let trivial_one = q.unit.map_or(true, |u| u == q.lattice.bottom());
        let q_unital = q.find_unit().is_some();
        for x in &xs {
            if !counter.take() {
                break 'weights;
            }
            let x_unital = !unit_sets(&x.rel).is_empty();
            let want_x = trivial_one && !x_unital && !seen.contains(&("x", qi));
            let want_q = !q_unital && !seen.contains(&("q", qi));
            if !want_x && !want_q {
                continue;
            }
            let l = LiftedAlgebra::new(RelBiMagma::diagonal(x), BiQuantale::diagonal(q));
            let Some(u) = Space::new(&l).find_unit(Which::Seq)? else { continue };
            let bq = BiQuantale::diagonal(q);
            let bx = RelBiMagma::diagonal(x);
            let kind = if x.is_empty() { Some("empty-carrier".to_string()) } else { construction(&bx, &bq) };
            if want_x {
                seen.insert(("x", qi));
                out.push(SearchWitness {
                    scope: Scope::NoUnit,
                    law: "unit".into(),
                    dropped: "Q:1≠0".into(),
                    construction: kind.clone(),
                    base: describe_magma(x),
                    weights: describe_quantale(q),
                    failure: LawCheck::fail("X:units", vec!["no unit set".into()])
                        .with_note(format!("Q^X unit {}", l.display(&u))),
                });
            }
            if want_q && u.support(l.zero()).next().is_none() {
                seen.insert(("q", qi));
                out.push(SearchWitness {
                    scope: Scope::NoUnit,
                    law: "unit".into(),
                    dropped: "X:E≠∅".into(),
                    construction: kind,
                    base: describe_magma(x),
                    weights: describe_quantale(q),
                    failure: LawCheck::fail("Q:unital", vec!["no two-sided unit".into()])
                        .with_note(format!("Q^X unit {}", l.display(&u))),
                });
            }
        }
    }
    Ok(out)
}
