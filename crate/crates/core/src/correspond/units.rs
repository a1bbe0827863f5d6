use super::lift::{prequantale_check_single, Space};
use super::{at, CorrespondenceReport, Direction};
use crate::convolution::{LiftedAlgebra, LiftedLaw};
use crate::error::{Error, Result};
use crate::relstruct::{
    check_rel_assoc, check_rel_comm, check_relational_interchange, is_unit_set, unit_failures, RelBiMagma, RelMagma,
};
use crate::report::LawCheck;
use crate::weights::{check_algebraic_interchange, BiQuantale, FiniteQuantale};
use crate::Which;

fn diagonal_lift(x: &RelMagma, q: &FiniteQuantale) -> LiftedAlgebra {
    LiftedAlgebra::new(RelBiMagma::diagonal(x), BiQuantale::diagonal(q))
}

fn renamed(mut c: LawCheck, law: &str) -> LawCheck {
    c.law = law.to_string();
    c
}

fn x_units(x: &RelMagma) -> LawCheck {
    match &x.units {
        None => LawCheck::fail("units", vec!["no unit set".into()]),
        Some(e) => {
            let bad = unit_failures(&x.rel, e).into_iter().flatten().next();
            LawCheck::from_counterexample("units", bad.map(|w| x.carrier.render(&w)))
        }
    }
}

fn q_unit(q: &FiniteQuantale) -> LawCheck {
    match q.unit {
        Some(u) if q.find_unit() == Some(u) => LawCheck::pass("unit"),
        Some(u) => LawCheck::fail("unit", vec![q.name(u).to_string()]),
        None => LawCheck::fail("unit", vec!["no unit".into()]),
    }
}

fn one_nonzero(q: &FiniteQuantale) -> LawCheck {
    match q.unit {
        Some(u) if u != q.lattice.bottom() => LawCheck::pass("1≠0"),
        Some(u) => LawCheck::fail("1≠0", vec![q.name(u).to_string()]),
        None => LawCheck::fail("1≠0", vec!["no unit".into()]),
    }
}

fn nonempty_units(x: &RelMagma) -> LawCheck {
    match &x.units {
        Some(e) if !e.is_empty() && is_unit_set(&x.rel, e) => LawCheck::pass("E≠∅"),
        _ => LawCheck::fail("E≠∅", vec!["no non-empty unit set".into()]),
    }
}

/// One clause of the unit correspondence for a relational magma and a
/// prequantale:
///
/// * [`Direction::Lift`]: if `X` and `Q` are unital, `id_E` is a two-sided
///   unit of `Q^X`.
/// * [`Direction::ReflectToX`]: if `Q^X` has a two-sided unit `u` and
///   `1 ≠ 0` in `Q`, the support of `u` is a unit set of `X`.
/// * [`Direction::ReflectToQ`]: if `Q^X` has a two-sided unit `u` with
///   non-empty support, `Q` has a two-sided unit.
///
/// The reflecting clauses search all of `Q^X` for the unit, so the function
/// space must be small.
pub fn verify_unit_correspondence(
    x: &RelMagma,
    q: &FiniteQuantale,
    direction: Direction,
) -> Result<CorrespondenceReport> {
    let l = diagonal_lift(x, q);
    let space = Space::new(&l);
    let pre = at("Q", prequantale_check_single(q));
    match direction {
        Direction::Lift => {
            let side = vec![pre, at("X", x_units(x)), at("Q", q_unit(q))];
            CorrespondenceReport::decide(direction, "unit", side, || {
                Ok(at("Q^X", renamed(space.law(LiftedLaw::Unit(Which::Seq))?, "unit")))
            })
        }
        Direction::ReflectToX | Direction::ReflectToQ => {
            let u = space.find_unit(Which::Seq)?;
            let unital = LawCheck::from_witness("unital", u.as_ref().map(|f| vec![l.display(f)]));
            let support: Vec<usize> = u.as_ref().map(|f| f.support(l.zero()).collect()).unwrap_or_default();
            let e_note = format!("E = {{{}}}", x.carrier.render(&support).join(", "));
            if direction == Direction::ReflectToX {
                let side = vec![pre, at("Q^X", unital), at("Q", one_nonzero(q))];
                let r = CorrespondenceReport::decide(direction, "unit", side, || {
                    let bad = unit_failures(&x.rel, &support).into_iter().flatten().next();
                    Ok(at("X", LawCheck::from_counterexample("units", bad.map(|w| x.carrier.render(&w)))))
                })?;
                Ok(if u.is_some() { r.with_note(e_note) } else { r })
            } else {
                let nonempty = if support.is_empty() {
                    LawCheck::fail("E≠∅", vec![e_note])
                } else {
                    LawCheck::pass("E≠∅")
                };
                let side = vec![pre, at("Q^X", unital), at("X", nonempty)];
                CorrespondenceReport::decide(direction, "unit", side, || {
                    let c = match q.find_unit() {
                        Some(_) => LawCheck::pass("unital"),
                        None => LawCheck::fail("unital", vec!["no two-sided unit".into()]),
                    };
                    Ok(at("Q", c))
                })
            }
        }
        _ => Err(Error::PreconditionFailed(format!("the unit correspondence has no `{direction}` clause"))),
    }
}

/// The unit inclusion lemma for a unital bi-magma and a unital
/// bi-prequantale, in four reports:
///
/// * lift: `E_par ⊆ E_seq` and `1_par ≤ 1_seq` give `id_par ≤ id_seq`;
/// * reflect-to-x: `id_par ≤ id_seq` and `1_par ≠ 0` give `E_par ⊆ E_seq`;
/// * reflect-to-q: `id_par ≤ id_seq` and `E_par ≠ ∅` give `1_par ≤ 1_seq`;
/// * iff: under `E_par ≠ ∅` and `1_par ≠ 0`, `id_par ≤ id_seq` exactly when
///   both inclusions hold.
pub fn verify_unit_inclusion(x: &RelBiMagma, q: &BiQuantale) -> Result<Vec<CorrespondenceReport>> {
    let es = x.units_seq.as_ref().ok_or(Error::NotUnital)?;
    let ep = x.units_par.as_ref().ok_or(Error::NotUnital)?;
    let (os, op) = (q.unit_seq.ok_or(Error::NotUnital)?, q.unit_par.ok_or(Error::NotUnital)?);
    let l = LiftedAlgebra::new(x.clone(), q.clone());
    let (is, ip) = (l.unit_function(Which::Seq)?, l.unit_function(Which::Par)?);

    let missing: Vec<usize> = ep.iter().copied().filter(|e| !es.contains(e)).collect();
    let e_incl = LawCheck::from_counterexample(
        "units-par⊆units-seq",
        (!missing.is_empty()).then(|| x.carrier.render(&missing)),
    );
    let one_le = LawCheck::from_counterexample(
        "1par≤1seq",
        (!q.lattice.leq(op, os)).then(|| vec![q.name(op).to_string(), q.name(os).to_string()]),
    );
    let bad_point = (0..x.len()).find(|&p| !q.lattice.leq(ip.get(p), is.get(p)));
    let id_le = LawCheck::from_counterexample("id-par≤id-seq", bad_point.map(|p| x.carrier.render(&[p])));
    let one_nonzero = LawCheck::from_counterexample(
        "1par≠0",
        (op == q.lattice.bottom()).then(|| vec![q.name(op).to_string()]),
    );
    let e_nonempty =
        LawCheck::from_counterexample("units-par≠∅", ep.is_empty().then(|| vec!["empty unit set".to_string()]));

    let law = "unit-inclusion";
    let mut out = Vec::new();
    {
        let c = at("Q^X", id_le.clone());
        out.push(CorrespondenceReport::decide(
            Direction::Lift,
            law,
            vec![at("X", e_incl.clone()), at("Q", one_le.clone())],
            || Ok(c),
        )?);
    }
    {
        let c = at("X", e_incl.clone());
        out.push(CorrespondenceReport::decide(
            Direction::ReflectToX,
            law,
            vec![at("Q^X", id_le.clone()), at("Q", one_nonzero.clone())],
            || Ok(c),
        )?);
    }
    {
        let c = at("Q", one_le.clone());
        out.push(CorrespondenceReport::decide(
            Direction::ReflectToQ,
            law,
            vec![at("Q^X", id_le.clone()), at("X", e_nonempty.clone())],
            || Ok(c),
        )?);
    }
    let agree = id_le.holds == (e_incl.holds && one_le.holds);
    let iff = LawCheck::from_counterexample(
        "id-inclusion⟺unit-inclusions",
        (!agree).then(|| vec![id_le.law.clone(), e_incl.law.clone(), one_le.law.clone()]),
    );
    out.push(CorrespondenceReport::decide(
        Direction::Iff,
        law,
        vec![at("X", e_nonempty), at("Q", one_nonzero)],
        || Ok(iff),
    )?);
    Ok(out)
}

fn q_assoc(q: &FiniteQuantale) -> LawCheck {
    let n = q.len();
    let mut cx = None;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if q.comp(q.comp(a, b), c) != q.comp(a, q.comp(b, c)) {
                    cx = Some(vec![q.name(a).to_string(), q.name(b).to_string(), q.name(c).to_string()]);
                    break 'outer;
                }
            }
        }
    }
    LawCheck::from_counterexample("assoc", cx)
}

fn q_comm(q: &FiniteQuantale) -> LawCheck {
    let n = q.len();
    let cx = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| q.comp(a, b) != q.comp(b, a))
        .map(|(a, b)| vec![q.name(a).to_string(), q.name(b).to_string()]);
    LawCheck::from_counterexample("comm", cx)
}

/// Some `a, b, c` with `a•(b•c) ≠ 0 ≠ (a•b)•c`.
fn assoc_nondegenerate(q: &FiniteQuantale) -> LawCheck {
    let n = q.len();
    let z = q.lattice.bottom();
    let w = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .find(|&(a, b, c)| q.comp(a, q.comp(b, c)) != z && q.comp(q.comp(a, b), c) != z)
        .map(|(a, b, c)| vec![q.name(a).to_string(), q.name(b).to_string(), q.name(c).to_string()]);
    LawCheck::from_witness("nondegenerate-assoc", w)
}

/// Some `x, y, z, u, v, w` with `R^x_{uz}`, `R^x_{yw}`, `R^z_{vw}`, `R^y_{uv}`.
fn assoc_configuration(x: &RelMagma) -> LawCheck {
    let r = &x.rel;
    let mut found = None;
    'outer: for (p, u, z) in r.triples() {
        for (v, w) in r.decompositions(z) {
            for y in r.results(u, v) {
                if r.contains(p, y, w) {
                    found = Some(x.carrier.render(&[p, y, z, u, v, w]));
                    break 'outer;
                }
            }
        }
    }
    LawCheck::from_witness("assoc-configuration", found)
}

fn nonzero_product(q: &FiniteQuantale) -> LawCheck {
    let n = q.len();
    let z = q.lattice.bottom();
    let w = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| q.comp(a, b) != z)
        .map(|(a, b)| vec![q.name(a).to_string(), q.name(b).to_string()]);
    LawCheck::from_witness("nonzero-product", w)
}

fn nonempty_relation(x: &RelMagma) -> LawCheck {
    LawCheck::from_witness("nonempty-relation", x.rel.triples().next().map(|(a, b, c)| x.carrier.render(&[a, b, c])))
}

/// The associativity and commutativity corollaries for a relational magma
/// and a prequantale: for each of `assoc` and `comm`, a lift, both
/// reflections (from deltas) and, when `X` has a non-empty unit set and
/// `1 ≠ 0` in `Q`, the equivalence.
///
/// Reflecting commutativity to `Q` only needs some triple in the relation.
pub fn verify_assoc_comm_corollaries(x: &RelMagma, q: &FiniteQuantale) -> Result<Vec<CorrespondenceReport>> {
    let l = diagonal_lift(x, q);
    let space = Space::new(&l);
    let pre = at("Q", prequantale_check_single(q));
    let mut out = Vec::new();

    let x_assoc = renamed(check_rel_assoc(x), "assoc");
    let (qa, qx_assoc_full, qx_assoc_deltas) = (
        q_assoc(q),
        renamed(space.law(LiftedLaw::Assoc(Which::Seq))?, "assoc"),
        renamed(space.law_on_deltas(LiftedLaw::Assoc(Which::Seq))?, "assoc"),
    );
    let x_comm = renamed(check_rel_comm(x), "comm");
    let (qc, qx_comm_full, qx_comm_deltas) = (
        q_comm(q),
        renamed(space.law(LiftedLaw::Comm(Which::Seq))?, "comm"),
        renamed(space.law_on_deltas(LiftedLaw::Comm(Which::Seq))?, "comm"),
    );

    for (law, xl, ql, full, deltas, q_nondeg, x_nondeg) in [
        ("assoc", &x_assoc, &qa, &qx_assoc_full, &qx_assoc_deltas, assoc_nondegenerate(q), assoc_configuration(x)),
        ("comm", &x_comm, &qc, &qx_comm_full, &qx_comm_deltas, nonzero_product(q), nonempty_relation(x)),
    ] {
        out.push(CorrespondenceReport::decide(
            Direction::Lift,
            law,
            vec![pre.clone(), at("X", xl.clone()), at("Q", ql.clone())],
            || Ok(at("Q^X", full.clone())),
        )?);
        out.push(CorrespondenceReport::decide(
            Direction::ReflectToX,
            law,
            vec![pre.clone(), at("Q^X", deltas.clone()), at("Q", q_nondeg)],
            || Ok(at("X", xl.clone())),
        )?);
        out.push(CorrespondenceReport::decide(
            Direction::ReflectToQ,
            law,
            vec![pre.clone(), at("Q^X", deltas.clone()), at("X", x_nondeg)],
            || Ok(at("Q", ql.clone())),
        )?);
        let agree = full.holds == (xl.holds && ql.holds);
        let iff = LawCheck::from_counterexample(
            format!("Q^X:{law}⟺X:{law}∧Q:{law}"),
            (!agree).then(|| vec![full.holds.to_string(), xl.holds.to_string(), ql.holds.to_string()]),
        );
        out.push(CorrespondenceReport::decide(
            Direction::Iff,
            law,
            vec![pre.clone(), at("X", nonempty_units(x)), at("Q", one_nonzero(q))],
            || Ok(iff),
        )?);
    }
    Ok(out)
}

fn first_failure(checks: Vec<LawCheck>, name: &str) -> LawCheck {
    checks.into_iter().find(|c| !c.holds).unwrap_or_else(|| LawCheck::pass(name))
}

/// I1–I6 from I7 in a bi-quantale with one shared unit.
pub fn verify_redundancy(q: &BiQuantale) -> Result<CorrespondenceReport> {
    let shared = match (q.unit_seq, q.unit_par) {
        (Some(a), Some(b))
            if a == b
                && (0..q.len()).all(|c| {
                    q.seq.get(a, c) == c && q.seq.get(c, a) == c && q.par.get(a, c) == c && q.par.get(c, a) == c
                }) =>
        {
            LawCheck::pass("shared-unit")
        }
        _ => LawCheck::fail("shared-unit", vec!["no unit shared by both compositions".into()]),
    };
    let side = vec![at("Q", check_algebraic_interchange(q, 7)?), at("Q", shared)];
    CorrespondenceReport::decide(Direction::Derived, "i1-i6", side, || {
        let checks = (1..=6).map(|k| check_algebraic_interchange(q, k)).collect::<Result<Vec<_>>>()?;
        Ok(at("Q", first_failure(checks, "i1-i6")))
    })
}

/// RI1–RI6 from RI7 in a relational bi-magma with one shared unit set.
pub fn verify_rel_redundancy(x: &RelBiMagma) -> Result<CorrespondenceReport> {
    // Parallel units only need to exist: down-closed parallel relations
    // (as in the graph-type models) break uniqueness but not the derivation.
    let shared = match (&x.units_seq, &x.units_par) {
        (Some(a), Some(b)) if a == b && is_unit_set(&x.seq, a) && {
            let f = unit_failures(&x.par, a);
            f[0].is_none() && f[2].is_none()
        } =>
        {
            LawCheck::pass("shared-units")
        }
        _ => LawCheck::fail("shared-units", vec!["no unit set shared by both relations".into()]),
    };
    let side = vec![at("X", check_relational_interchange(x, 7)?), at("X", shared)];
    CorrespondenceReport::decide(Direction::Derived, "ri1-ri6", side, || {
        let checks = (1..=6).map(|k| check_relational_interchange(x, k)).collect::<Result<Vec<_>>>()?;
        Ok(at("X", first_failure(checks, "ri1-ri6")))
    })
}
