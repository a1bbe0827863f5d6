use convalg::correspond::{enumerate_biquantales, enumerate_interchange_quantales, enumerate_quantales};
use convalg::weights::{
    boolean, boolean_quantale, chain_meet, check_algebraic_interchange, check_degeneracy, check_kleene_axioms,
    check_quantale_laws, check_weak_eckmann_hilton, min_plus, quantale_star, weak_eckmann_hilton, BiQuantale,
    FiniteLattice, FiniteQuantale, KleeneAlgebraTable, OrderedBiMagma, Table,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every tuple over `0..n` of length `k`, in lexicographic order.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

/// The lattice as a plain order matrix, join and meet by search.
struct Order {
    n: usize,
    le: Vec<Vec<bool>>,
}

impl Order {
    fn of(l: &FiniteLattice) -> Self {
        let n = l.len();
        Order { n, le: (0..n).map(|a| (0..n).map(|b| l.leq(a, b)).collect()).collect() }
    }
    fn join(&self, a: usize, b: usize) -> usize {
        let ubs: Vec<usize> = (0..self.n).filter(|&u| self.le[a][u] && self.le[b][u]).collect();
        *ubs.iter().find(|&&u| ubs.iter().all(|&v| self.le[u][v])).unwrap()
    }
    fn bottom(&self) -> usize {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.le[b][x])).unwrap()
    }
}

/// First failing tuple of each quantale law, evaluated on the raw table.
fn quantale_oracle(q: &FiniteQuantale) -> Vec<(&'static str, Option<Vec<usize>>)> {
    let n = q.len();
    let o = Order::of(&q.lattice);
    let c = |a: usize, b: usize| q.comp.get(a, b);
    let first = |k: usize, p: &dyn Fn(&[usize]) -> bool| tuples(n, k).into_iter().find(|t| !p(t));
    let z = o.bottom();
    let mut out = vec![("assoc", first(3, &|t| c(c(t[0], t[1]), t[2]) == c(t[0], c(t[1], t[2]))))];
    if let Some(u) = q.unit {
        out.push(("unit-left", first(1, &|t| c(u, t[0]) == t[0])));
        out.push(("unit-right", first(1, &|t| c(t[0], u) == t[0])));
    }
    // Semiring naming: left distributivity is a•(b∨c) = a•b ∨ a•c.
    out.push(("join-left", first(3, &|t| c(t[0], o.join(t[1], t[2])) == o.join(c(t[0], t[1]), c(t[0], t[2])))));
    out.push(("join-right", first(3, &|t| c(o.join(t[0], t[1]), t[2]) == o.join(c(t[0], t[2]), c(t[1], t[2])))));
    out.push(("bottom-left", first(1, &|t| c(z, t[0]) == z)));
    out.push(("bottom-right", first(1, &|t| c(t[0], z) == z)));
    out
}

fn assert_quantale_matches(q: &FiniteQuantale) {
    let r = check_quantale_laws(q);
    for (law, cx) in quantale_oracle(q) {
        let got = r.get(law).unwrap_or_else(|| panic!("missing {law}"));
        assert_eq!(got.holds, cx.is_none(), "{law} on {q:?}");
        if let Some(t) = cx {
            let names: Vec<String> = t.iter().map(|&a| q.name(a).to_string()).collect();
            assert_eq!(got.witness.as_ref(), Some(&names), "{law}");
        }
    }
}

/// The interchange law Ik written out directly.
fn interchange_oracle(q: &BiQuantale, k: usize) -> Option<Vec<usize>> {
    let o = Order::of(&q.lattice);
    let s = |a: usize, b: usize| q.seq.get(a, b);
    let p = |a: usize, b: usize| q.par.get(a, b);
    let arity = [2, 2, 3, 3, 3, 3, 4][k - 1];
    tuples(q.len(), arity).into_iter().find(|t| {
        let (lhs, rhs) = match k {
            1 => (s(t[0], t[1]), p(t[0], t[1])),
            2 => (s(t[0], t[1]), p(t[1], t[0])),
            3 => (s(t[0], p(t[1], t[2])), p(s(t[0], t[1]), t[2])),
            4 => (s(p(t[0], t[1]), t[2]), p(t[0], s(t[1], t[2]))),
            5 => (s(t[0], p(t[1], t[2])), p(t[1], s(t[0], t[2]))),
            6 => (s(p(t[0], t[1]), t[2]), p(s(t[0], t[2]), t[1])),
            _ => (s(p(t[0], t[1]), p(t[2], t[3])), p(s(t[0], t[2]), s(t[1], t[3]))),
        };
        !o.le[lhs][rhs]
    })
}

fn degeneracy_oracle(q: &BiQuantale, k: usize) -> Option<Vec<usize>> {
    let z = Order::of(&q.lattice).bottom();
    let s = |a: usize, b: usize| q.seq.get(a, b);
    let p = |a: usize, b: usize| q.par.get(a, b);
    let arity = [2, 3, 3, 4][k - 1];
    tuples(q.len(), arity).into_iter().find(|t| {
        let v = match k {
            1 => s(t[0], t[1]),
            2 => s(t[0], p(t[1], t[2])),
            3 => s(p(t[0], t[1]), t[2]),
            _ => s(p(t[0], t[1]), p(t[2], t[3])),
        };
        v != z
    })
}

fn assert_bi_matches(q: &BiQuantale) {
    let names = |t: Vec<usize>| t.into_iter().map(|a| q.name(a).to_string()).collect::<Vec<_>>();
    for k in 1..=7 {
        let got = check_algebraic_interchange(q, k).unwrap();
        assert_eq!(got.witness, interchange_oracle(q, k).map(names), "i{k}");
    }
    for k in 1..=4 {
        let got = check_degeneracy(q, k).unwrap();
        assert_eq!(got.witness, degeneracy_oracle(q, k).map(names), "d{k}");
        assert_eq!(got.holds, got.witness.is_some());
    }
}

fn random_table(rng: &mut ChaCha8Rng, n: usize) -> Table {
    Table::new(n, (0..n * n).map(|_| rng.gen_range(0..n)).collect()).unwrap()
}

fn diamond() -> FiniteLattice {
    FiniteLattice::powerset(&["a", "b"]).unwrap()
}

#[test]
fn quantale_examples() {
    let b = boolean_quantale();
    assert!(check_quantale_laws(&b).all_hold());
    assert_quantale_matches(&b);

    let mut broken = b.clone();
    broken.comp = Table::from_fn(2, |a, c| if (a, c) == (1, 1) { 0 } else { a & c });
    let r = check_quantale_laws(&broken);
    assert_eq!(r.get("unit-left").unwrap().witness.as_deref(), Some(&["1".to_string()][..]));
    assert_quantale_matches(&broken);

    let chain = chain_meet(["0", "m", "1"]).unwrap();
    assert!(check_quantale_laws(&chain).all_hold());
    assert_quantale_matches(&chain);
}

#[test]
fn quantale_checker_agrees_with_oracle() {
    for n in 1..=3 {
        for q in enumerate_quantales(n).unwrap() {
            assert_quantale_matches(&q);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let l = if rng.gen_bool(0.5) { diamond() } else { FiniteLattice::chain(["0", "m", "1"]).unwrap() };
        let n = l.len();
        let comp = random_table(&mut rng, n);
        let unit = rng.gen_bool(0.5).then(|| rng.gen_range(0..n));
        assert_quantale_matches(&FiniteQuantale::new(l, comp, unit).unwrap());
    }
}

#[test]
fn interchange_examples() {
    let q = boolean();
    assert!(check_algebraic_interchange(&q, 7).unwrap().holds);

    let mut zero_par = boolean();
    zero_par.par = Table::constant(2, 0);
    let c = check_algebraic_interchange(&zero_par, 1).unwrap();
    assert!(!c.holds);
    assert_eq!(c.witness.unwrap(), vec!["1", "1"]);

    assert_eq!(check_degeneracy(&q, 4).unwrap().witness.unwrap(), vec!["1", "1", "1", "1"]);
    let z = Table::constant(2, 0);
    let all_zero = BiQuantale::new(FiniteLattice::boolean(), z.clone(), z, None, None).unwrap();
    assert!(!check_degeneracy(&all_zero, 1).unwrap().holds);
}

#[test]
fn interchange_checker_agrees_with_oracle() {
    for n in 1..=3 {
        for q in enumerate_biquantales(n).unwrap() {
            assert_bi_matches(&q);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let l = if rng.gen_bool(0.5) { diamond() } else { FiniteLattice::boolean() };
        let n = l.len();
        let (s, p) = (random_table(&mut rng, n), random_table(&mut rng, n));
        assert_bi_matches(&BiQuantale::new(l, s, p, None, None).unwrap());
    }
}

#[test]
fn shared_unit_gives_d1_to_d3() {
    for n in 1..=3 {
        for q in enumerate_interchange_quantales(n).unwrap() {
            for k in 1..=3 {
                assert!(check_degeneracy(&q, k).unwrap().holds, "d{k}");
            }
        }
    }
}

#[test]
fn i7_with_shared_unit_gives_the_small_laws() {
    let mut seen = 0;
    for n in 1..=3 {
        for q in enumerate_interchange_quantales(n).unwrap() {
            seen += 1;
            for k in 1..=6 {
                assert!(interchange_oracle(&q, k).is_none(), "i{k} on {q:?}");
                assert!(check_algebraic_interchange(&q, k).unwrap().holds);
            }
        }
    }
    assert!(seen > 3);
}

/// `a • ⋁S = ⋁ (a • s)` and `⋁S • a = ⋁ (s • a)` for every subset S.
fn distributes_over_subsets(q: &FiniteQuantale) -> bool {
    let n = q.len();
    let o = Order::of(&q.lattice);
    let z = o.bottom();
    (0u32..1 << n).all(|mask| {
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sup = s.iter().fold(z, |acc, &x| o.join(acc, x));
        (0..n).all(|a| {
            let l = s.iter().fold(z, |acc, &x| o.join(acc, q.comp(a, x)));
            let r = s.iter().fold(z, |acc, &x| o.join(acc, q.comp(x, a)));
            q.comp(a, sup) == l && q.comp(sup, a) == r
        })
    })
}

#[test]
fn accepted_quantales_preserve_all_sups() {
    let mut accepted = 0;
    for n in 1..=3 {
        for q in enumerate_quantales(n).unwrap() {
            if check_quantale_laws(&q).all_hold() {
                accepted += 1;
                assert!(distributes_over_subsets(&q));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let q = FiniteQuantale::new(diamond(), random_table(&mut rng, 4), None).unwrap();
        if check_quantale_laws(&q).all_hold() {
            accepted += 1;
            assert!(distributes_over_subsets(&q));
        }
    }
    let meet = FiniteQuantale::new(diamond(), Table::from_fn(4, |a, b| a & b), Some(3)).unwrap();
    assert!(check_quantale_laws(&meet).all_hold() && distributes_over_subsets(&meet));
    assert!(accepted > 10);
}

fn star_oracle(q: &FiniteQuantale, a: usize) -> usize {
    let o = Order::of(&q.lattice);
    let one = q.unit.unwrap();
    let (mut power, mut acc) = (one, one);
    loop {
        power = q.comp(a, power);
        let next = o.join(acc, power);
        if next == acc {
            return acc;
        }
        acc = next;
    }
}

#[test]
fn quantale_star_is_the_join_of_powers() {
    let chain = chain_meet(["0", "m", "1"]).unwrap();
    assert_eq!(quantale_star(&chain, 1).unwrap(), 2);
    let mut count = 0;
    for n in 1..=3 {
        for q in enumerate_quantales(n).unwrap() {
            if q.unit.is_none() || !check_quantale_laws(&q).all_hold() {
                continue;
            }
            count += 1;
            for a in 0..n {
                assert_eq!(quantale_star(&q, a).unwrap(), star_oracle(&q, a));
            }
            let k = KleeneAlgebraTable::from_quantale(&q).unwrap();
            assert!(check_kleene_axioms(&k).all_hold());
        }
    }
    assert!(count > 3);
    let mp = min_plus(3).unwrap().seq_retract();
    for a in 0..3 {
        assert_eq!(quantale_star(&mp, a).unwrap(), star_oracle(&mp, a));
    }
}

#[test]
fn kleene_examples() {
    let k = KleeneAlgebraTable::from_quantale(&boolean_quantale()).unwrap();
    assert!(check_kleene_axioms(&k).all_hold());
    let mut broken = k.clone();
    broken.star[1] = 0;
    assert!(!check_kleene_axioms(&broken).get("unfold-left").unwrap().holds);
    assert!(check_kleene_axioms(&KleeneAlgebraTable::min_plus(3).unwrap()).all_hold());
}

#[test]
fn weak_eckmann_hilton_on_two_elements() {
    let r = check_weak_eckmann_hilton(&boolean()).unwrap();
    assert!(r.units_coincide && r.all_hold());
    let (mut with_i7, mut distinct) = (0, 0);
    for m in OrderedBiMagma::enumerate_unital(2) {
        let dom = [0, 1];
        let Ok(r) = weak_eckmann_hilton(&m, &dom) else { continue };
        with_i7 += 1;
        let (us, up) = (m.unit_seq.unwrap(), m.unit_par.unwrap());
        assert!(m.order.leq(us, up));
        assert!(r.unit_seq_le_unit_par.holds);
        if us != up {
            distinct += 1;
            assert!(!r.units_coincide);
        } else {
            assert!(r.small_laws.unwrap().iter().all(|c| c.holds));
        }
    }
    assert!(with_i7 > 0 && distinct > 0);
}

proptest! {
    #[test]
    fn commutative_equal_tables_satisfy_i2(cells in proptest::collection::vec(0usize..3, 9)) {
        let t = Table::new(3, cells).unwrap();
        let sym = Table::from_fn(3, |a, b| t.get(a.min(b), a.max(b)));
        let q = BiQuantale::new(FiniteLattice::chain(["0", "1", "2"]).unwrap(), sym.clone(), sym, None, None).unwrap();
        prop_assert!(check_algebraic_interchange(&q, 2).unwrap().holds);
    }

    #[test]
    fn interchange_matches_oracle_on_the_diamond(
        s in proptest::collection::vec(0usize..4, 16),
        p in proptest::collection::vec(0usize..4, 16),
    ) {
        let q = BiQuantale::new(diamond(), Table::new(4, s).unwrap(), Table::new(4, p).unwrap(), None, None).unwrap();
        for k in 1..=7 {
            prop_assert_eq!(check_algebraic_interchange(&q, k).unwrap().holds, interchange_oracle(&q, k).is_none());
        }
    }
}
