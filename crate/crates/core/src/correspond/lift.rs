use super::{at, CorrespondenceReport, Direction};
use crate::convolution::{
    check_lifted_laws, run_law, Budget, LiftedAlgebra, LiftedLaw, Materialized, WeightedFunction,
};
use crate::error::{Error, Result};
use crate::relstruct::{
    assoc_counterexample, check_relational_degeneracy, check_relational_interchange, is_unit_set, RelBiMagma,
};
use crate::report::LawCheck;
use crate::weights::{
    check_algebraic_interchange, check_degeneracy, check_quantale_laws, degeneracy_for_law, interchange_arity,
    BiQuantale, FiniteQuantale,
};
use crate::Which;

/// Function spaces up to this size are materialized with full tables.
const MATERIALIZE_LIMIT: usize = 32;

/// The function space of `Q^X`, either fully tabulated or checked through
/// [`check_lifted_laws`] with the default budget.
pub(super) enum Space<'a> {
    Full { m: Materialized<'a>, deltas: Vec<usize> },
    Large { l: &'a LiftedAlgebra, deltas: Vec<WeightedFunction> },
}

impl<'a> Space<'a> {
    pub(super) fn new(l: &'a LiftedAlgebra) -> Self {
        match l.function_count() {
            Some(c) if c <= MATERIALIZE_LIMIT => {
                let m = Materialized::full(l);
                let deltas = l.deltas().iter().map(|f| m.index_of(f)).collect();
                Space::Full { m, deltas }
            }
            _ => Space::Large { l, deltas: l.deltas() },
        }
    }

    /// A law on the whole space, or on the generated fragment if too large.
    pub(super) fn law(&self, law: LiftedLaw) -> Result<LawCheck> {
        match self {
            Space::Full { m, .. } => {
                let dom: Vec<usize> = (0..m.size()).collect();
                run_law(m, law, &dom)
            }
            Space::Large { l, .. } => Ok(check_lifted_laws(l, law, Budget::default())?.check),
        }
    }

    /// A law quantified over deltas only.
    pub(super) fn law_on_deltas(&self, law: LiftedLaw) -> Result<LawCheck> {
        let c = match self {
            Space::Full { m, deltas } => run_law(m, law, deltas)?,
            Space::Large { l, deltas } => run_law(*l, law, deltas)?,
        };
        Ok(c.with_note("on deltas"))
    }

    /// A two-sided unit of one convolution, searched over the whole space.
    pub(super) fn find_unit(&self, which: Which) -> Result<Option<WeightedFunction>> {
        let Space::Full { m, .. } = self else {
            return Err(Error::PreconditionFailed("function space too large to search for a unit".into()));
        };
        let n = m.size();
        Ok((0..n)
            .find(|&u| (0..n).all(|f| m.op(which, u, f) == f && m.op(which, f, u) == f))
            .map(|u| m.function(u).clone()))
    }
}

/// Binary-join preservation and bottom annihilation for both compositions,
/// named `prequantale`.
pub(super) fn prequantale_check(q: &BiQuantale) -> LawCheck {
    let failure = [(Which::Seq, q.seq_retract()), (Which::Par, q.par_retract())].into_iter().find_map(|(w, r)| {
        check_quantale_laws(&r)
            .checks
            .into_iter()
            .filter(|c| c.law.starts_with("join") || c.law.starts_with("bottom"))
            .find(|c| !c.holds)
            .map(|c| {
                let mut wit = vec![w.to_string(), c.law];
                wit.extend(c.witness.unwrap_or_default());
                wit
            })
    });
    LawCheck::from_counterexample("prequantale", failure)
}

pub(super) fn prequantale_check_single(q: &FiniteQuantale) -> LawCheck {
    prequantale_check(&BiQuantale::diagonal(q))
}

const SINGLETON_NOTE: &str = "Q is a singleton, so Q^X is a singleton and satisfies every law whatever X is";

fn lift_with(x: &RelBiMagma, q: &BiQuantale, space: &Space, k: usize) -> Result<CorrespondenceReport> {
    let side = vec![
        at("Q", prequantale_check(q)),
        at("X", check_relational_interchange(x, k)?),
        at("Q", check_algebraic_interchange(q, k)?),
    ];
    CorrespondenceReport::decide(Direction::Lift, format!("i{k}"), side, || {
        Ok(at("Q^X", space.law(LiftedLaw::Interchange(k))?))
    })
}

fn reflect_x_with(x: &RelBiMagma, q: &BiQuantale, space: &Space, k: usize) -> Result<CorrespondenceReport> {
    let d = degeneracy_for_law(k)?;
    let side = vec![
        at("Q", prequantale_check(q)),
        at("Q", check_degeneracy(q, d)?),
        at("Q^X", space.law_on_deltas(LiftedLaw::Interchange(k))?),
    ];
    let r = CorrespondenceReport::decide(Direction::ReflectToX, format!("ri{k}"), side, || {
        Ok(at("X", check_relational_interchange(x, k)?))
    })?;
    Ok(if q.len() == 1 { r.with_note(SINGLETON_NOTE) } else { r })
}

fn reflect_q_with(x: &RelBiMagma, q: &BiQuantale, space: &Space, k: usize) -> Result<CorrespondenceReport> {
    let d = degeneracy_for_law(k)?;
    let side = vec![
        at("Q", prequantale_check(q)),
        at("X", check_relational_degeneracy(x, d)?),
        at("Q^X", space.law_on_deltas(LiftedLaw::Interchange(k))?),
    ];
    CorrespondenceReport::decide(Direction::ReflectToQ, format!("i{k}"), side, || {
        Ok(at("Q", check_algebraic_interchange(q, k)?))
    })
}

fn lifted(x: &RelBiMagma, q: &BiQuantale) -> LiftedAlgebra {
    LiftedAlgebra::new(x.clone(), q.clone())
}

/// Ik in `Q^X` from RIk in `X` and Ik in `Q`, for prequantale weights.
pub fn verify_lift(x: &RelBiMagma, q: &BiQuantale, k: usize) -> Result<CorrespondenceReport> {
    interchange_arity(k)?;
    let l = lifted(x, q);
    lift_with(x, q, &Space::new(&l), k)
}

/// RIk in `X` from the degeneracy condition for Ik in `Q` and Ik on the
/// deltas of `Q^X`.
pub fn verify_reflect_to_x(x: &RelBiMagma, q: &BiQuantale, k: usize) -> Result<CorrespondenceReport> {
    interchange_arity(k)?;
    let l = lifted(x, q);
    reflect_x_with(x, q, &Space::new(&l), k)
}

/// Ik in `Q` from the relational degeneracy condition for Ik in `X` and
/// Ik on the deltas of `Q^X`.
pub fn verify_reflect_to_q(x: &RelBiMagma, q: &BiQuantale, k: usize) -> Result<CorrespondenceReport> {
    interchange_arity(k)?;
    let l = lifted(x, q);
    reflect_q_with(x, q, &Space::new(&l), k)
}

/// All three directions for I1–I7 on one pair, sharing one function-space table.
pub fn correspondence_suite(x: &RelBiMagma, q: &BiQuantale) -> Result<Vec<CorrespondenceReport>> {
    let l = lifted(x, q);
    let space = Space::new(&l);
    let mut out = Vec::with_capacity(21);
    for k in 1..=7 {
        out.push(lift_with(x, q, &space, k)?);
        out.push(reflect_x_with(x, q, &space, k)?);
        out.push(reflect_q_with(x, q, &space, k)?);
    }
    Ok(out)
}

fn assoc_table(q: &BiQuantale, w: Which) -> LawCheck {
    let n = q.len();
    let t = match w {
        Which::Seq => &q.seq,
        Which::Par => &q.par,
    };
    let mut cx = None;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t.get(t.get(a, b), c) != t.get(a, t.get(b, c)) {
                    cx = Some(vec![q.name(a).to_string(), q.name(b).to_string(), q.name(c).to_string()]);
                    break 'outer;
                }
            }
        }
    }
    LawCheck::from_counterexample(format!("assoc-{w}"), cx)
}

/// A relational interchange monoid and an interchange quantale lift to an
/// interchange quantale: `Q^X` is associative and unital for both
/// convolutions and satisfies I1–I7.
///
/// Side conditions on `X`: both relations associative, one shared unit set
/// satisfying the unit axioms for both, and RI7. On `Q`: prequantale
/// tables, both compositions associative, one shared unit above bottom,
/// and I7.
pub fn verify_interchange_quantale_lift(x: &RelBiMagma, q: &BiQuantale) -> Result<CorrespondenceReport> {
    let mut side = Vec::new();
    for w in [Which::Seq, Which::Par] {
        let cx = assoc_counterexample(x.relation(w)).map(|(t, _)| x.carrier.render(&t));
        side.push(at("X", LawCheck::from_counterexample(format!("assoc-{w}"), cx)));
    }
    let shared = match (&x.units_seq, &x.units_par) {
        (Some(a), Some(b)) if a == b && is_unit_set(&x.seq, a) && is_unit_set(&x.par, a) => None,
        _ => Some(vec!["units differ or violate the unit axioms".to_string()]),
    };
    side.push(at("X", LawCheck::from_counterexample("shared-units", shared)));
    side.push(at("X", check_relational_interchange(x, 7)?));
    side.push(at("Q", prequantale_check(q)));
    side.push(at("Q", assoc_table(q, Which::Seq)));
    side.push(at("Q", assoc_table(q, Which::Par)));
    let shared_q = match (q.unit_seq, q.unit_par) {
        (Some(a), Some(b))
            if a == b
                && a != q.lattice.bottom()
                && (0..q.len()).all(|c| {
                    q.seq.get(a, c) == c && q.seq.get(c, a) == c && q.par.get(a, c) == c && q.par.get(c, a) == c
                }) =>
        {
            None
        }
        _ => Some(vec!["no shared unit above bottom".to_string()]),
    };
    side.push(at("Q", LawCheck::from_counterexample("shared-unit", shared_q)));
    side.push(at("Q", check_algebraic_interchange(q, 7)?));
    CorrespondenceReport::decide(Direction::Lift, "interchange-quantale", side, || {
        let l = lifted(x, q);
        let space = Space::new(&l);
        let mut laws = vec![
            LiftedLaw::Assoc(Which::Seq),
            LiftedLaw::Assoc(Which::Par),
            LiftedLaw::Unit(Which::Seq),
            LiftedLaw::Unit(Which::Par),
        ];
        laws.extend((1..=7).map(LiftedLaw::Interchange));
        for law in laws {
            let c = space.law(law)?;
            if !c.holds {
                return Ok(at("Q^X", c));
            }
        }
        Ok(LawCheck::pass("Q^X:interchange-quantale"))
    })
}
