use convalg::partialmon::presets::{counterexample_s9, heaplet22, interval3, one_point, pair2};
use convalg::partialmon::{
    check_partial_monoid, check_pim, check_positive, check_serially_decomposable, check_small_partial_interchange,
    pim_to_bimagma, pim_to_interchange_semigroup, to_relational, to_relational_preordered, Encoding,
    PartialInterchangeMonoid, PartialMonoid, PartialOp, PreorderedPartialMonoid,
};
use convalg::relstruct::{check_rel_assoc, check_rel_comm, check_rel_units, check_relational_interchange, is_functional};
use convalg::order::Preorder;
use convalg::relstruct::Carrier;
use convalg::Error;

fn assert_relational_monoid(pm: &PartialMonoid) {
    assert!(check_partial_monoid(pm).all_hold(), "{}", check_partial_monoid(pm));
    let m = to_relational(pm);
    assert!(check_rel_assoc(&m).holds);
    assert!(check_rel_units(&m).unwrap().all_hold());
    assert!(is_functional(&m).holds);
}

#[test]
fn interval_fusion_is_a_relational_monoid() {
    let pm = interval3();
    assert_eq!(pm.len(), 6);
    assert_relational_monoid(&pm);
    let units: Vec<&str> = pm.units.iter().map(|&u| pm.carrier.name(u)).collect();
    assert_eq!(units, ["[0,0]", "[1,1]", "[2,2]"]);
    let c = &pm.carrier;
    let (a, b) = (c.index_of("[0,1]").unwrap(), c.index_of("[1,2]").unwrap());
    assert_eq!(pm.op.get(a, b), Some(c.index_of("[0,2]").unwrap()));
    assert!(matches!(pm.op.apply(c, b, a), Err(Error::Undefined(..))));
}

#[test]
fn pair_composition_is_a_relational_monoid() {
    let pm = pair2();
    assert_relational_monoid(&pm);
    let units: Vec<&str> = pm.units.iter().map(|&u| pm.carrier.name(u)).collect();
    assert_eq!(units, ["aa", "bb"]);
    let m = to_relational(&pm);
    assert!(!check_rel_comm(&m).holds);
}

#[test]
fn heaplets_form_a_commutative_relational_monoid() {
    let pm = heaplet22();
    assert_eq!(pm.len(), 9);
    assert_relational_monoid(&pm);
    assert_eq!(pm.carrier.name(pm.units[0]), "emp");
    assert!(check_rel_comm(&to_relational(&pm)).holds);
    let c = &pm.carrier;
    let (x, y) = (c.index_of("1a").unwrap(), c.index_of("2b").unwrap());
    assert_eq!(pm.op.get(x, y).map(|h| c.name(h)), Some("1a2b"));
    assert_eq!(pm.op.get(x, c.index_of("1b").unwrap()), None);
}

#[test]
fn discrete_preorder_encoding_matches_equality_encoding() {
    for pm in [interval3(), pair2(), heaplet22()] {
        let n = pm.len();
        let ppm = PreorderedPartialMonoid { monoid: pm.clone(), preorder: Preorder::discrete(n) };
        assert_eq!(to_relational_preordered(&ppm).rel, to_relational(&pm).rel);
    }
}

#[test]
fn one_point_passes_everything() {
    let p = one_point();
    assert!(check_pim(&p).all_hold());
    for k in 1..=6 {
        assert!(check_small_partial_interchange(&p, k).unwrap().holds);
    }
    let b = pim_to_interchange_semigroup(&p).unwrap();
    for k in 1..=7 {
        assert!(check_relational_interchange(&b, k).unwrap().holds);
    }
    assert!(check_positive(&p).holds);
    assert!(check_serially_decomposable(&p).holds);
}

#[test]
fn countermodel_breaks_ri1_under_equality_encoding() {
    let p = counterexample_s9();
    assert!(check_small_partial_interchange(&p, 1).unwrap().holds);
    let eq = pim_to_bimagma(&p, Encoding::Equality).unwrap();
    let c = check_relational_interchange(&eq, 1).unwrap();
    assert!(!c.holds);
    assert_eq!(c.witness.unwrap(), ["b", "a", "a"]);
    assert!(!eq.seq.is_subset(&eq.par));
    let pre = pim_to_bimagma(&p, Encoding::Preorder).unwrap();
    assert!(check_relational_interchange(&pre, 1).unwrap().holds);
}

#[test]
fn positivity_fails_below_the_unit() {
    // e and a below it; a;a = a, a|a = a
    let c = Carrier::new(["e", "a"]).unwrap();
    let op = PartialOp::new(2, [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]).unwrap();
    let o = Preorder::closure_of(2, [(1, 0)]);
    let p = PartialInterchangeMonoid::new(c, o, op.clone(), op, vec![0], vec![0]).unwrap();
    let pos = check_positive(&p);
    assert!(!pos.holds);
    assert_eq!(pos.witness.unwrap(), ["a", "e"]);
}

/// Brute-force serial decomposability over all triples `(x, y1, y2)`.
fn serially_decomposable_oracle(p: &PartialInterchangeMonoid) -> bool {
    let n = p.len();
    for y1 in 0..n {
        for y2 in 0..n {
            let Some(y) = p.seq.get(y1, y2) else { continue };
            for x in 0..n {
                if !p.preorder.leq(x, y) {
                    continue;
                }
                let split = (0..n).any(|x1| {
                    (0..n).any(|x2| p.seq.get(x1, x2) == Some(x) && p.preorder.leq(x1, y1) && p.preorder.leq(x2, y2))
                });
                if !split {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn serial_decomposability_search_over_three_elements() {
    // Carrier {e, a, b}, e a two-sided unit, sequential op given by its value on
    // (a,a), orders on {a, b}; the checker is compared with the oracle on every case.
    let c = Carrier::new(["e", "a", "b"]).unwrap();
    let mut found_failure = false;
    let orders = [vec![], vec![(1, 2)], vec![(2, 1)]];
    for aa in [None, Some(1), Some(2)] {
        for ab in [None, Some(2)] {
            for pairs in &orders {
                let mut entries: Vec<_> = (0..3).flat_map(|x| [(0, x, x), (x, 0, x)]).collect();
                if let Some(r) = aa {
                    entries.push((1, 1, r));
                }
                if let Some(r) = ab {
                    entries.push((1, 2, r));
                }
                let op = PartialOp::new(3, entries).unwrap();
                let o = Preorder::closure_of(3, pairs.iter().copied());
                let p = PartialInterchangeMonoid::new(c.clone(), o, op.clone(), op, vec![0], vec![0]).unwrap();
                let got = check_serially_decomposable(&p).holds;
                assert_eq!(got, serially_decomposable_oracle(&p));
                found_failure |= !got;
            }
        }
    }
    assert!(found_failure);
}

#[test]
fn multiple_units_are_rejected_for_relational_conversion() {
    let pm = pair2();
    let p = PartialInterchangeMonoid::new(
        pm.carrier.clone(),
        Preorder::discrete(4),
        pm.op.clone(),
        pm.op.clone(),
        pm.units.clone(),
        pm.units.clone(),
    )
    .unwrap();
    assert!(matches!(pim_to_interchange_semigroup(&p), Err(Error::MultipleUnits(2))));
    assert!(matches!(check_small_partial_interchange(&p, 1), Err(Error::MultipleUnits(2))));
}

#[test]
fn conflicting_entries_are_malformed() {
    assert!(matches!(PartialOp::new(2, [(0, 0, 0), (0, 0, 1)]), Err(Error::MalformedTable(_))));
    assert!(matches!(PartialOp::new(2, [(0, 0, 2)]), Err(Error::MalformedTable(_))));
}
