use std::collections::BTreeSet;

use super::magma::{Grading, RelBiMagma, RelMagma, TernaryRelation};
use crate::error::{Error, Result};
use crate::report::{LawCheck, LawReport};
use crate::weights::EHReport;

fn min_tuple<const N: usize>(acc: &mut Option<[usize; N]>, t: [usize; N]) {
    if acc.map_or(true, |a| t < a) {
        *acc = Some(t);
    }
}

/// The first `(x, u, v, w)` at which `∃y. R^y_{uv} ∧ R^x_{yw}` and
/// `∃y. R^x_{uy} ∧ R^y_{vw}` disagree; the flag is true when the left
/// association holds and the right one does not.
pub fn assoc_counterexample(r: &TernaryRelation) -> Option<([usize; 4], bool)> {
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for (x, y, w) in r.triples() {
        for (u, v) in r.decompositions(y) {
            left.insert([x, u, v, w]);
        }
    }
    for (x, u, y) in r.triples() {
        for (v, w) in r.decompositions(y) {
            right.insert([x, u, v, w]);
        }
    }
    let l = left.difference(&right).next().map(|t| (*t, true));
    let rr = right.difference(&left).next().map(|t| (*t, false));
    match (l, rr) {
        (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
        (a, b) => a.or(b),
    }
}

/// Relational associativity.
pub fn check_rel_assoc(m: &RelMagma) -> LawCheck {
    match assoc_counterexample(&m.rel) {
        None => LawCheck::pass("assoc"),
        Some((t, left)) => LawCheck::fail("assoc", m.carrier.render(&t)).with_note(if left {
            "left association has a witness, right does not"
        } else {
            "right association has a witness, left does not"
        }),
    }
}

/// Which of the four unit axioms fail for `units`, each with its first witness.
///
/// Order: left existence, left uniqueness, right existence, right uniqueness.
pub fn unit_failures(r: &TernaryRelation, units: &[usize]) -> [Option<Vec<usize>>; 4] {
    let n = r.size();
    let is_unit = |e: usize| units.contains(&e);
    let left_exists = (0..n).find(|&x| !units.iter().any(|&e| r.contains(x, e, x))).map(|x| vec![x]);
    let right_exists = (0..n).find(|&x| !units.iter().any(|&e| r.contains(x, x, e))).map(|x| vec![x]);
    let mut left_unique = None;
    let mut right_unique = None;
    for (x, y, z) in r.triples() {
        if is_unit(y) && x != z {
            min_tuple(&mut left_unique, [x, y, z]);
        }
        if is_unit(z) && x != y {
            min_tuple(&mut right_unique, [x, y, z]);
        }
    }
    [left_exists, left_unique.map(Vec::from), right_exists, right_unique.map(Vec::from)]
}

/// True iff `units` satisfies all four unit axioms for `r`.
pub fn is_unit_set(r: &TernaryRelation, units: &[usize]) -> bool {
    unit_failures(r, units).iter().all(Option::is_none)
}

/// The four relational unit axioms for the declared unit set.
pub fn check_rel_units(m: &RelMagma) -> Result<LawReport> {
    let units = m.units.as_ref().ok_or(Error::NotUnital)?;
    let names = ["unit-left-exists", "unit-left-unique", "unit-right-exists", "unit-right-unique"];
    let mut r = LawReport::new();
    for (name, f) in names.iter().zip(unit_failures(&m.rel, units)) {
        r.push(LawCheck::from_counterexample(*name, f.map(|w| m.carrier.render(&w))));
    }
    Ok(r)
}

/// Relational commutativity: `R^x_{uv} ⇒ R^x_{vu}`.
pub fn check_rel_comm(m: &RelMagma) -> LawCheck {
    let w = m.rel.triples().find(|&(x, u, v)| !m.rel.contains(x, v, u));
    LawCheck::from_counterexample("comm", w.map(|(x, u, v)| m.carrier.render(&[x, u, v])))
}

/// Each pair `(y, z)` has at most one `x` with `R^x_{yz}`. The witness lists
/// two conflicting triples.
pub fn is_functional(m: &RelMagma) -> LawCheck {
    let n = m.len();
    let mut best: Option<[usize; 4]> = None;
    for y in 0..n {
        for z in 0..n {
            let rs = m.rel.results_raw(y, z);
            if rs.len() > 1 {
                min_tuple(&mut best, [rs[0] as usize, rs[1] as usize, y, z]);
            }
        }
    }
    LawCheck::from_counterexample(
        "functional",
        best.map(|[x1, x2, y, z]| {
            let c = &m.carrier;
            vec![
                format!("({},{},{})", c.name(x1), c.name(y), c.name(z)),
                format!("({},{},{})", c.name(x2), c.name(y), c.name(z)),
            ]
        }),
    )
}

/// `y ⊙ z = {x | R^x_{yz}}`.
pub fn as_multioperation(m: &RelMagma, y: usize, z: usize) -> Vec<usize> {
    m.rel.results(y, z).collect()
}

/// Arity of relational law RIk, counted in the free variables of the tuple
/// reported as witness (the result `x` first).
pub fn rel_interchange_arity(k: usize) -> Result<usize> {
    match k {
        1 | 2 => Ok(3),
        3..=6 => Ok(4),
        7 => Ok(5),
        _ => Err(Error::InvalidLaw(k)),
    }
}

/// Left-hand sides of RI3/RI5: `∃y. s R^x_{uy} ∧ p R^y_{vw}`, as `(x, u, v, w)`.
fn lhs_seq_par<'a>(s: &'a TernaryRelation, p: &'a TernaryRelation) -> impl Iterator<Item = [usize; 4]> + 'a {
    s.triples().flat_map(move |(x, u, y)| p.decompositions(y).map(move |(v, w)| [x, u, v, w]))
}

/// Left-hand sides of RI4/RI6: `∃y. p R^y_{uv} ∧ s R^x_{yw}`, as `(x, u, v, w)`.
fn lhs_par_seq<'a>(s: &'a TernaryRelation, p: &'a TernaryRelation) -> impl Iterator<Item = [usize; 4]> + 'a {
    s.triples().flat_map(move |(x, y, w)| p.decompositions(y).map(move |(u, v)| [x, u, v, w]))
}

/// Left-hand sides of RI7: `∃y,z. p R^y_{tu} ∧ s R^x_{yz} ∧ p R^z_{vw}`, as `(x, t, u, v, w)`.
fn lhs_seven<'a>(s: &'a TernaryRelation, p: &'a TernaryRelation) -> impl Iterator<Item = [usize; 5]> + 'a {
    s.triples().flat_map(move |(x, y, z)| {
        p.decompositions(y)
            .flat_map(move |(t, u)| p.decompositions(z).map(move |(v, w)| [x, t, u, v, w]))
    })
}

/// The lexicographically first violation of RIk for sequential relation `s`
/// and parallel relation `p`:
///
/// * RI1: `s R^x_{uv} ⇒ p R^x_{uv}`
/// * RI2: `s R^x_{uv} ⇒ p R^x_{vu}`
/// * RI3: `∃y. s R^x_{uy} ∧ p R^y_{vw} ⇒ ∃y. s R^y_{uv} ∧ p R^x_{yw}`
/// * RI4: `∃y. p R^y_{uv} ∧ s R^x_{yw} ⇒ ∃y. p R^x_{uy} ∧ s R^y_{vw}`
/// * RI5: `∃y. s R^x_{uy} ∧ p R^y_{vw} ⇒ ∃y. p R^x_{vy} ∧ s R^y_{uw}`
/// * RI6: `∃y. p R^y_{uv} ∧ s R^x_{yw} ⇒ ∃y. s R^y_{uw} ∧ p R^x_{yv}`
/// * RI7: `∃y,z. p R^y_{tu} ∧ s R^x_{yz} ∧ p R^z_{vw} ⇒ ∃y,z. s R^y_{tv} ∧ p R^x_{yz} ∧ s R^z_{uw}`
pub fn rel_interchange_counterexample(
    s: &TernaryRelation,
    p: &TernaryRelation,
    k: usize,
) -> Result<Option<Vec<usize>>> {
    rel_interchange_arity(k)?;
    let out = match k {
        1 | 2 => s
            .triples()
            .find(|&(x, u, v)| !if k == 1 { p.contains(x, u, v) } else { p.contains(x, v, u) })
            .map(|(x, u, v)| vec![x, u, v]),
        3 | 5 => {
            let mut best = None;
            for [x, u, v, w] in lhs_seq_par(s, p) {
                let ok = if k == 3 {
                    s.results(u, v).any(|y| p.contains(x, y, w))
                } else {
                    s.results(u, w).any(|y| p.contains(x, v, y))
                };
                if !ok {
                    min_tuple(&mut best, [x, u, v, w]);
                }
            }
            best.map(Vec::from)
        }
        4 | 6 => {
            let mut best = None;
            for [x, u, v, w] in lhs_par_seq(s, p) {
                let ok = if k == 4 {
                    s.results(v, w).any(|y| p.contains(x, u, y))
                } else {
                    s.results(u, w).any(|y| p.contains(x, y, v))
                };
                if !ok {
                    min_tuple(&mut best, [x, u, v, w]);
                }
            }
            best.map(Vec::from)
        }
        _ => {
            let mut best = None;
            for [x, t, u, v, w] in lhs_seven(s, p) {
                let ok = s.results(t, v).any(|y| s.results(u, w).any(|z| p.contains(x, y, z)));
                if !ok {
                    min_tuple(&mut best, [x, t, u, v, w]);
                }
            }
            best.map(Vec::from)
        }
    };
    Ok(out)
}

/// Law RIk on a bi-magma, named `ri1` … `ri7`.
pub fn check_relational_interchange(b: &RelBiMagma, k: usize) -> Result<LawCheck> {
    let cx = rel_interchange_counterexample(&b.seq, &b.par, k)?;
    Ok(LawCheck::from_counterexample(format!("ri{k}"), cx.map(|w| b.carrier.render(&w))))
}

/// The lexicographically first witness of RDk, the existence of a
/// left-hand side of shape
///
/// * RD1: `s R^x_{uv}`
/// * RD2: `s R^x_{uy} ∧ p R^y_{vw}`
/// * RD3: `p R^y_{uv} ∧ s R^x_{yw}`
/// * RD4: `p R^y_{tu} ∧ s R^x_{yz} ∧ p R^z_{vw}`
pub fn rel_degeneracy_witness(s: &TernaryRelation, p: &TernaryRelation, k: usize) -> Result<Option<Vec<usize>>> {
    Ok(match k {
        1 => s.triples().next().map(|(x, u, v)| vec![x, u, v]),
        2 => lhs_seq_par(s, p).min().map(Vec::from),
        3 => lhs_par_seq(s, p).min().map(Vec::from),
        4 => lhs_seven(s, p).min().map(Vec::from),
        _ => return Err(Error::InvalidLaw(k)),
    })
}

/// Condition RDk on a bi-magma, named `rd1` … `rd4`.
pub fn check_relational_degeneracy(b: &RelBiMagma, k: usize) -> Result<LawCheck> {
    let w = rel_degeneracy_witness(&b.seq, &b.par, k)?;
    Ok(LawCheck::from_witness(format!("rd{k}"), w.map(|w| b.carrier.render(&w))))
}

/// Checks that `g` is a grading: positive off the units, additive along the
/// relation, and zero exactly on the units.
pub fn check_grading(m: &RelMagma, g: &Grading) -> LawReport {
    let c = &m.carrier;
    let mut r = LawReport::new();
    if g.0.len() != m.len() {
        r.push(LawCheck::fail("grading-total", vec![format!("{} grades for {} elements", g.0.len(), m.len())]));
        return r;
    }
    let positive = (0..m.len()).find(|&x| !m.is_unit(x) && g.grade(x) == 0);
    r.push(LawCheck::from_counterexample("grade-positive", positive.map(|x| c.render(&[x]))));
    let additive = m.rel.triples().find(|&(x, y, z)| g.grade(x) != g.grade(y) + g.grade(z));
    r.push(LawCheck::from_counterexample("grade-additive", additive.map(|(x, y, z)| c.render(&[x, y, z]))));
    let zero = (0..m.len()).find(|&x| (g.grade(x) == 0) != m.is_unit(x));
    r.push(LawCheck::from_counterexample("grade-zero-iff-unit", zero.map(|x| c.render(&[x]))));
    r
}

/// The relational weak Eckmann–Hilton argument: in a bi-magma whose two
/// unit sets both satisfy the unit axioms and which satisfies RI7, the
/// sequential units are parallel units; if the unit sets coincide, RI1–RI6
/// hold.
pub fn check_rel_weak_eckmann_hilton(b: &RelBiMagma) -> Result<EHReport> {
    let es = b.units_seq.as_ref().ok_or(Error::NotUnital)?;
    let ep = b.units_par.as_ref().ok_or(Error::NotUnital)?;
    if !is_unit_set(&b.seq, es) || !is_unit_set(&b.par, ep) {
        return Err(Error::PreconditionFailed("unit sets violate the unit axioms".into()));
    }
    if let Some(w) = rel_interchange_counterexample(&b.seq, &b.par, 7)? {
        return Err(Error::PreconditionFailed(format!(
            "ri7 fails at ({})",
            b.carrier.render(&w).join(", ")
        )));
    }
    let missing: Vec<usize> = es.iter().copied().filter(|e| !ep.contains(e)).collect();
    let incl = if missing.is_empty() {
        LawCheck::pass("units-seq⊆units-par")
    } else {
        LawCheck::fail("units-seq⊆units-par", b.carrier.render(&missing))
    };
    let units_coincide = ep.iter().all(|e| es.contains(e));
    let small_laws = if units_coincide {
        Some((1..=6).map(|k| check_relational_interchange(b, k)).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    Ok(EHReport { unit_seq_le_unit_par: incl, units_coincide, small_laws })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relstruct::Carrier;

    #[test]
    fn one_point() {
        let m = RelMagma::from_named(&["e"], &[("e", "e", "e")], Some(&["e"])).unwrap();
        assert!(check_rel_assoc(&m).holds);
        assert!(check_rel_units(&m).unwrap().all_hold());
        assert!(check_rel_comm(&m).holds);
        let b = RelBiMagma::diagonal(&m);
        for k in 1..=7 {
            assert!(check_relational_interchange(&b, k).unwrap().holds);
        }
        assert!(check_relational_degeneracy(&b, 4).unwrap().holds);
    }

    #[test]
    fn idempotent_point_is_associative() {
        // brute force over all (x,u,v,w) ∈ {e,a}^4 of both existentials
        let m = RelMagma::from_named(&["e", "a"], &[("a", "a", "a")], None).unwrap();
        let r = |x: usize, y: usize, z: usize| (x, y, z) == (1, 1, 1);
        let mut agree = true;
        for x in 0..2 {
            for u in 0..2 {
                for v in 0..2 {
                    for w in 0..2 {
                        let l = (0..2).any(|y| r(y, u, v) && r(x, y, w));
                        let rr = (0..2).any(|y| r(x, u, y) && r(y, v, w));
                        agree &= l == rr;
                    }
                }
            }
        }
        assert_eq!(check_rel_assoc(&m).holds, agree);
        assert!(agree);
    }

    #[test]
    fn broken_assoc_witness() {
        // a·a = b, b·a = a, a·b undefined: left association of (a,a,a) reaches a, right does not
        let m = RelMagma::from_named(&["a", "b"], &[("b", "a", "a"), ("a", "b", "a")], None).unwrap();
        let c = check_rel_assoc(&m);
        assert!(!c.holds);
        assert_eq!(c.witness.unwrap(), vec!["a", "a", "a", "a"]);
    }

    #[test]
    fn empty_units_fail_existence() {
        let m = RelMagma::from_named(&["e"], &[("e", "e", "e")], Some(&[])).unwrap();
        let r = check_rel_units(&m).unwrap();
        assert!(!r.get("unit-left-exists").unwrap().holds);
        assert!(r.get("unit-left-unique").unwrap().holds);
        let m = RelMagma::from_named(&["e"], &[], None).unwrap();
        assert_eq!(check_rel_units(&m), Err(Error::NotUnital));
    }

    #[test]
    fn empty_relation_laws() {
        let c = Carrier::numbered(2);
        let m = RelMagma::new(c, TernaryRelation::empty(2), None).unwrap();
        assert!(check_rel_comm(&m).holds);
        assert!(is_functional(&m).holds);
        let b = RelBiMagma::diagonal(&m);
        assert!(!check_relational_degeneracy(&b, 1).unwrap().holds);
    }

    #[test]
    fn grading_zero_fails() {
        let m = RelMagma::from_named(&["e", "a"], &[("e", "e", "e"), ("a", "e", "a"), ("a", "a", "e")], Some(&["e"]))
            .unwrap();
        let r = check_grading(&m, &Grading(vec![0, 0]));
        assert_eq!(r.get("grade-positive").unwrap().witness.as_ref().unwrap(), &vec!["a".to_string()]);
        assert!(check_grading(&m, &Grading(vec![0, 1])).get("grade-additive").unwrap().holds);
    }
}
