use super::function::{convolve_unchecked, unit_function, WeightedFunction};
use crate::error::{Error, Result};
use crate::relstruct::{check_grading, Grading, RelMagma};
use crate::weights::{check_kleene_axioms, Dioid, FiniteQuantale, KleeneAlgebraTable};

/// The Kleene star of `f` in `K^X` for a graded relational monoid with a
/// single unit `e`:
///
/// * `f⋆ e = (f e)⋆`
/// * `f⋆ x = (f e)⋆ · Σ_{R^x_{yz}, y ≠ e} f y · f⋆ z`
///
/// Elements are evaluated in ascending grade; `y ≠ e` forces `z` to have a
/// smaller grade than `x`, so every value needed is already known.
pub fn star_graded(
    f: &WeightedFunction,
    m: &RelMagma,
    grading: &Grading,
    k: &KleeneAlgebraTable,
) -> Result<WeightedFunction> {
    let units = m.units.as_ref().ok_or(Error::MultipleUnits(0))?;
    if units.len() != 1 {
        return Err(Error::MultipleUnits(units.len()));
    }
    let e = units[0];
    if let Some(bad) = check_grading(m, grading).failures().next() {
        return Err(Error::NotGraded(bad.to_string()));
    }
    if let Some(bad) = check_kleene_axioms(k).failures().next() {
        return Err(Error::NotKleene(bad.to_string()));
    }
    if f.len() != m.len() {
        return Err(Error::CarrierMismatch("function and magma sizes differ".into()));
    }
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by_key(|&x| (grading.grade(x), x));
    let fe_star = k.star[f.get(e)];
    let mut out = WeightedFunction::bottom(m.len(), k.zero);
    for x in order {
        out.values[x] = if x == e {
            fe_star
        } else {
            let sum = m
                .rel
                .decompositions(x)
                .filter(|&(y, _)| y != e)
                .fold(k.zero, |acc, (y, z)| k.add(acc, k.mul(f.get(y), out.get(z))));
            k.mul(fe_star, sum)
        };
    }
    Ok(out)
}

/// `f⋆` as the least fixpoint of `g ↦ id_E ∨ f ∗ g`, by iteration from bottom.
pub fn iterative_star(f: &WeightedFunction, m: &RelMagma, q: &FiniteQuantale) -> Result<WeightedFunction> {
    if f.len() != m.len() {
        return Err(Error::CarrierMismatch("function and magma sizes differ".into()));
    }
    let id = unit_function(m, q)?;
    let mut g = WeightedFunction::bottom(m.len(), q.zero());
    loop {
        let next = id.join(&convolve_unchecked(&m.rel, q, &f.values, &g.values), &q.lattice);
        if next == g {
            return Ok(g);
        }
        g = next;
    }
}
