//! Law lists per structure kind.

use convalg::format::Structure;
use convalg::graphmodels::Digraph;
use convalg::partialmon::{self, check_small_partial_interchange, pim_to_bimagma};
use convalg::relstruct::{
    check_grading, check_rel_assoc, check_rel_comm, check_rel_units, check_rel_weak_eckmann_hilton,
    check_relational_degeneracy, check_relational_interchange, is_functional, Grading, RelBiMagma, RelMagma,
};
use convalg::weights::{
    check_algebraic_interchange, check_degeneracy, check_quantale_laws, check_weak_eckmann_hilton, BiQuantale,
};
use convalg::{LawCheck, Result, Which};

/// One available check. `default` checks run when no law is selected.
pub struct Entry {
    pub check: LawCheck,
    pub default: bool,
}

fn prefixed(prefix: &str, c: LawCheck) -> LawCheck {
    LawCheck { law: format!("{prefix}{}", c.law), ..c }
}

struct Entries(Vec<Entry>);

impl Entries {
    fn core(&mut self, c: LawCheck) {
        self.0.push(Entry { check: c, default: true });
    }
    fn extra(&mut self, c: LawCheck) {
        self.0.push(Entry { check: c, default: false });
    }
}

pub fn entries(s: &Structure) -> Result<Vec<Entry>> {
    let mut e = Entries(Vec::new());
    match s {
        Structure::Quantale(q) => {
            for c in check_quantale_laws(q).checks {
                e.core(c);
            }
        }
        Structure::BiQuantale(q) => biquantale(&mut e, q)?,
        Structure::RelMagma { magma, grading } => relmagma(&mut e, "", magma, grading.as_ref())?,
        Structure::RelBiMagma { bimagma, grading } => relbimagma(&mut e, bimagma, grading.as_ref())?,
        Structure::Universe { bimagma, grading, .. } => relbimagma(&mut e, bimagma, Some(grading))?,
        Structure::PartialMonoid(pm) => {
            for c in partialmon::check_partial_monoid(pm).checks {
                e.core(c);
            }
            relmagma(&mut e, "rel:", &partialmon::to_relational(pm), None)?;
        }
        Structure::PreorderedPartialMonoid(pm) => {
            for c in partialmon::check_preordered_partial_monoid(pm).checks {
                e.core(c);
            }
            relmagma(&mut e, "rel:", &partialmon::to_relational_preordered(pm), None)?;
        }
        Structure::Pim { pim, encoding } => {
            for c in partialmon::check_pim(pim).checks {
                e.core(c);
            }
            for k in 1..=6 {
                e.core(check_small_partial_interchange(pim, k)?);
            }
            let b = pim_to_bimagma(pim, *encoding)?;
            for k in 1..=7 {
                e.extra(check_relational_interchange(&b, k)?);
            }
        }
        Structure::Graph(g) => graph(&mut e, g),
    }
    Ok(e.0)
}

fn biquantale(e: &mut Entries, q: &BiQuantale) -> Result<()> {
    for (w, r) in [(Which::Seq, q.seq_retract()), (Which::Par, q.par_retract())] {
        for c in check_quantale_laws(&r).checks {
            e.core(prefixed(&format!("{w}:"), c));
        }
    }
    let mut i7 = false;
    for k in 1..=7 {
        let c = check_algebraic_interchange(q, k)?;
        i7 = c.holds;
        e.core(c);
    }
    for k in 1..=4 {
        e.extra(check_degeneracy(q, k)?);
    }
    if i7 && q.unit_seq.is_some() && q.unit_par.is_some() {
        e.core(check_weak_eckmann_hilton(q)?.unit_seq_le_unit_par);
    }
    Ok(())
}

fn relmagma(e: &mut Entries, prefix: &str, m: &RelMagma, grading: Option<&Grading>) -> Result<()> {
    e.core(prefixed(prefix, check_rel_assoc(m)));
    if m.units.is_some() {
        for c in check_rel_units(m)?.checks {
            e.core(prefixed(prefix, c));
        }
    }
    e.extra(prefixed(prefix, check_rel_comm(m)));
    e.extra(prefixed(prefix, is_functional(m)));
    if let Some(g) = grading {
        for c in check_grading(m, g).checks {
            e.core(prefixed(prefix, c));
        }
    }
    Ok(())
}

fn relbimagma(e: &mut Entries, b: &RelBiMagma, grading: Option<&Grading>) -> Result<()> {
    let mut units_hold = true;
    for w in [Which::Seq, Which::Par] {
        let m = b.retract(w);
        let p = format!("{w}:");
        e.core(prefixed(&p, check_rel_assoc(&m)));
        if m.units.is_some() {
            let r = check_rel_units(&m)?;
            units_hold &= r.all_hold();
            for c in r.checks {
                e.core(prefixed(&p, c));
            }
        }
        let comm = prefixed(&p, check_rel_comm(&m));
        if w == Which::Par {
            e.core(comm);
        } else {
            e.extra(comm);
        }
    }
    let mut ri7 = false;
    for k in 1..=7 {
        let c = check_relational_interchange(b, k)?;
        ri7 = c.holds;
        e.core(c);
    }
    for k in 1..=4 {
        e.extra(check_relational_degeneracy(b, k)?);
    }
    if ri7 && units_hold && b.units_seq.is_some() && b.units_par.is_some() {
        e.core(check_rel_weak_eckmann_hilton(b)?.unit_seq_le_unit_par);
    }
    if let Some(g) = grading {
        for c in check_grading(&b.retract(Which::Seq), g).checks {
            e.core(prefixed("seq:", c));
        }
    }
    Ok(())
}

fn graph(e: &mut Entries, g: &Digraph) {
    let cycle = (!g.is_poset()).then(|| vec!["not acyclic and transitively closed".to_string()]);
    e.core(LawCheck::from_counterexample("poset", cycle));
}
