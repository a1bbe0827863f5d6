use convalg::correspond::{
    correspondence_suite, enumerate_bimagmas, enumerate_biquantales, enumerate_interchange_monoids,
    enumerate_interchange_quantales, enumerate_quantales, enumerate_relmagmas, search_counterexamples, unit_sets,
    verify_assoc_comm_corollaries, verify_interchange_quantale_lift, verify_lift, verify_reflect_to_q,
    verify_reflect_to_x, verify_rel_redundancy, verify_redundancy, verify_unit_correspondence,
    verify_unit_inclusion, Direction, Scope, Verdict,
};
use convalg::graphmodels::{build_type_bimagma, TypeUniverse};
use convalg::langmodels::{build_word_bimagma, BoundedWordUniverse};
use convalg::relstruct::{Carrier, RelBiMagma, RelMagma, TernaryRelation};
use convalg::weights::{self, BiQuantale, FiniteQuantale};

/// Both relations of a bi-magma as boolean cubes, for brute-force checks.
struct Cube {
    n: usize,
    s: Vec<bool>,
    p: Vec<bool>,
}

impl Cube {
    fn new(x: &RelBiMagma) -> Self {
        let n = x.len();
        let mut s = vec![false; n * n * n];
        let mut p = vec![false; n * n * n];
        for (a, b, c) in x.seq.triples() {
            s[(a * n + b) * n + c] = true;
        }
        for (a, b, c) in x.par.triples() {
            p[(a * n + b) * n + c] = true;
        }
        Cube { n, s, p }
    }
    fn s(&self, x: usize, y: usize, z: usize) -> bool {
        self.s[(x * self.n + y) * self.n + z]
    }
    fn p(&self, x: usize, y: usize, z: usize) -> bool {
        self.p[(x * self.n + y) * self.n + z]
    }

    /// RIk evaluated quantifier by quantifier.
    fn ri(&self, k: usize) -> bool {
        let pts: Vec<usize> = (0..self.n).collect();
        let ex = |f: &dyn Fn(usize) -> bool| pts.iter().any(|&y| f(y));
        let ex2 = |f: &dyn Fn(usize, usize) -> bool| pts.iter().any(|&y| pts.iter().any(|&z| f(y, z)));
        for &x in &pts {
            for &u in &pts {
                for &v in &pts {
                    match k {
                        1 if self.s(x, u, v) && !self.p(x, u, v) => return false,
                        2 if self.s(x, u, v) && !self.p(x, v, u) => return false,
                        1 | 2 => {}
                        _ => {
                            for &w in &pts {
                                let ok = match k {
                                    3 => !ex(&|y| self.s(x, u, y) && self.p(y, v, w))
                                        || ex(&|y| self.s(y, u, v) && self.p(x, y, w)),
                                    4 => !ex(&|y| self.p(y, u, v) && self.s(x, y, w))
                                        || ex(&|y| self.p(x, u, y) && self.s(y, v, w)),
                                    5 => !ex(&|y| self.s(x, u, y) && self.p(y, v, w))
                                        || ex(&|y| self.p(x, v, y) && self.s(y, u, w)),
                                    6 => !ex(&|y| self.p(y, u, v) && self.s(x, y, w))
                                        || ex(&|y| self.s(y, u, w) && self.p(x, y, v)),
                                    _ => pts.iter().all(|&t| {
                                        !ex2(&|y, z| self.p(y, t, u) && self.s(x, y, z) && self.p(z, v, w))
                                            || ex2(&|y, z| self.s(y, t, v) && self.p(x, y, z) && self.s(z, u, w))
                                    }),
                                };
                                if !ok {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// Ik over every function of `Q^X`, with convolution computed from the
/// definition `(f ∗ g) x = ⋁ {f y • g z | R^x_{yz}}`.
fn lifted_law_oracle(x: &RelBiMagma, q: &BiQuantale, k: usize) -> bool {
    let c = Cube::new(x);
    let (n, m) = (x.len(), q.len());
    let bot = q.lattice.bottom();
    let funcs: Vec<Vec<usize>> = (0..m.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect()
        })
        .collect();
    let conv = |seq: bool, f: &[usize], g: &[usize]| -> Vec<usize> {
        (0..n)
            .map(|p| {
                let mut acc = bot;
                for y in 0..n {
                    for z in 0..n {
                        let rel = if seq { c.s(p, y, z) } else { c.p(p, y, z) };
                        if rel {
                            let v = if seq { q.seq.get(f[y], g[z]) } else { q.par.get(f[y], g[z]) };
                            acc = q.lattice.join(acc, v);
                        }
                    }
                }
                acc
            })
            .collect()
    };
    let s = |f: &[usize], g: &[usize]| conv(true, f, g);
    let p = |f: &[usize], g: &[usize]| conv(false, f, g);
    let le = |f: &[usize], g: &[usize]| f.iter().zip(g).all(|(&a, &b)| q.lattice.leq(a, b));
    for a in &funcs {
        for b in &funcs {
            let ok = match k {
                1 => le(&s(a, b), &p(a, b)),
                2 => le(&s(a, b), &p(b, a)),
                _ => funcs.iter().all(|cc| match k {
                    3 => le(&s(a, &p(b, cc)), &p(&s(a, b), cc)),
                    4 => le(&s(&p(a, b), cc), &p(a, &s(b, cc))),
                    5 => le(&s(a, &p(b, cc)), &p(b, &s(a, cc))),
                    6 => le(&s(&p(a, b), cc), &p(&s(a, cc), b)),
                    _ => funcs.iter().all(|d| le(&s(&p(a, b), &p(cc, d)), &p(&s(a, cc), &s(b, d)))),
                }),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

fn small_weights() -> Vec<BiQuantale> {
    let mut qs = enumerate_biquantales(1).unwrap();
    qs.extend(enumerate_biquantales(2).unwrap());
    qs
}

fn words(max: usize) -> RelBiMagma {
    build_word_bimagma(&BoundedWordUniverse::new(&['a', 'b'], max).unwrap())
}

fn one_point() -> RelBiMagma {
    let m = RelMagma::from_named(&["e"], &[("e", "e", "e")], Some(&["e"])).unwrap();
    RelBiMagma::diagonal(&m)
}

fn singleton_q() -> BiQuantale {
    enumerate_biquantales(1).unwrap().remove(0)
}

#[test]
fn lift_examples() {
    let b = weights::boolean();
    assert_eq!(verify_lift(&words(2), &b, 7).unwrap().verdict, Verdict::Pass);
    let posets = build_type_bimagma(&TypeUniverse::new(3, &[], true).unwrap());
    assert_eq!(verify_lift(&posets, &b, 7).unwrap().verdict, Verdict::Pass);
    for k in 1..=7 {
        assert_eq!(verify_lift(&one_point(), &b, k).unwrap().verdict, Verdict::Pass);
    }
    assert!(verify_lift(&one_point(), &b, 8).is_err());
}

#[test]
fn lift_refuses_failed_preconditions() {
    // a sequential triple with no parallel counterpart breaks RI1
    let x = RelBiMagma::new(
        Carrier::numbered(1),
        TernaryRelation::new(1, [(0, 0, 0)]).unwrap(),
        TernaryRelation::empty(1),
        None,
        None,
    )
    .unwrap();
    let r = verify_lift(&x, &weights::boolean(), 1).unwrap();
    assert_eq!(r.verdict, Verdict::PreconditionFailed);
    assert!(r.side_conditions.iter().any(|c| c.law == "X:ri1" && !c.holds));
    assert!(r.conclusion.is_none());
    assert!(!Cube::new(&x).ri(1));
}

#[test]
fn reflect_examples() {
    let x = one_point();
    let r = verify_reflect_to_x(&x, &singleton_q(), 1).unwrap();
    assert_eq!(r.verdict, Verdict::PreconditionFailed);
    assert!(r.note.unwrap().contains("singleton"));

    let r = verify_reflect_to_x(&x, &weights::boolean(), 1).unwrap();
    let d1 = r.side_conditions.iter().find(|c| c.law == "Q:d1").unwrap();
    assert!(d1.holds);
    assert_eq!(d1.witness.as_deref(), Some(&["1".to_string(), "1".to_string()][..]));
    assert_eq!(r.verdict, Verdict::Pass);

    // the relational mirror: a singleton base with the full relation has RD1
    let r = verify_reflect_to_q(&x, &weights::boolean(), 1).unwrap();
    assert!(r.side_conditions.iter().any(|c| c.law == "X:rd1" && c.holds));
    assert_eq!(r.verdict, Verdict::Pass);
    let empty = RelBiMagma::new(Carrier::numbered(1), TernaryRelation::empty(1), TernaryRelation::empty(1), None, None)
        .unwrap();
    assert_eq!(verify_reflect_to_q(&empty, &weights::boolean(), 1).unwrap().verdict, Verdict::PreconditionFailed);
}

#[test]
fn reflection_fails_where_the_base_law_fails() {
    // RI7 fails in X, so with D4 available I7 cannot hold on the deltas of Q^X
    let x = RelBiMagma::new(
        Carrier::numbered(2),
        TernaryRelation::new(2, [(0, 0, 0)]).unwrap(),
        TernaryRelation::new(2, [(0, 0, 1)]).unwrap(),
        None,
        None,
    )
    .unwrap();
    let r = verify_reflect_to_x(&x, &weights::boolean(), 7).unwrap();
    assert_eq!(r.verdict, Verdict::PreconditionFailed);
    let lifted = r.side_conditions.iter().find(|c| c.law == "Q^X:i7").unwrap();
    assert!(!lifted.holds);
    assert!(lifted.witness.as_ref().unwrap().iter().all(|w| w.starts_with('{')));
}

#[test]
fn suite_agrees_with_oracles_on_a_sample() {
    let xs = enumerate_bimagmas(2).unwrap();
    for q in small_weights() {
        for x in xs.iter().step_by(211) {
            let cube = Cube::new(x);
            for r in correspondence_suite(x, &q).unwrap() {
                assert_ne!(r.verdict, Verdict::Alarm, "{r}");
                let k: usize = r.law.trim_start_matches('r').trim_start_matches('i').parse().unwrap();
                let side = |name: &str| r.side_conditions.iter().find(|c| c.law == name).unwrap().holds;
                match r.direction {
                    Direction::Lift => {
                        assert_eq!(side(&format!("X:ri{k}")), cube.ri(k));
                        if let Some(c) = &r.conclusion {
                            assert_eq!(c.holds, lifted_law_oracle(x, &q, k));
                        }
                    }
                    Direction::ReflectToX => {
                        if let Some(c) = &r.conclusion {
                            assert_eq!(c.holds, cube.ri(k));
                        }
                    }
                    _ => {}
                }
            }
        }
    }
}

#[test]
fn no_alarms_on_one_point_bases_and_three_element_chains() {
    let mut xs = enumerate_bimagmas(1).unwrap();
    xs.push(words(1));
    for q in enumerate_biquantales(3).unwrap() {
        for x in &xs {
            for r in correspondence_suite(x, &q).unwrap() {
                assert_ne!(r.verdict, Verdict::Alarm, "{r}");
            }
        }
    }
}

#[test]
fn unit_lift_on_words() {
    let w = words(2).retract(convalg::Which::Seq);
    let r = verify_unit_correspondence(&w, &weights::boolean_quantale(), Direction::Lift).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
}

fn all_magmas() -> Vec<RelMagma> {
    let mut out = Vec::new();
    for n in 0..=2 {
        out.extend(enumerate_relmagmas(n).unwrap());
    }
    out
}

fn quantales() -> Vec<FiniteQuantale> {
    (1..=3).flat_map(|n| enumerate_quantales(n).unwrap()).collect()
}

#[test]
fn unit_reflection_reconstructs_unit_sets() {
    let mut reconstructed = 0;
    for q in quantales() {
        for x in all_magmas() {
            for d in [Direction::ReflectToX, Direction::ReflectToQ] {
                let r = verify_unit_correspondence(&x, &q, d).unwrap();
                assert_ne!(r.verdict, Verdict::Alarm, "{r}");
                if d == Direction::ReflectToX && r.verdict == Verdict::Pass {
                    // the support of the unit is a unit set, found independently by subset search
                    let note = r.note.clone().unwrap();
                    let sets = unit_sets(&x.rel);
                    assert!(sets.iter().any(|e| note == format!("E = {{{}}}", x.carrier.render(e).join(", "))));
                    reconstructed += 1;
                }
            }
            for e in unit_sets(&x.rel) {
                let xe = RelMagma { units: Some(e), ..x.clone() };
                let r = verify_unit_correspondence(&xe, &q, Direction::Lift).unwrap();
                assert_ne!(r.verdict, Verdict::Alarm, "{r}");
            }
        }
    }
    assert!(reconstructed > 0);
}

#[test]
fn unit_reflection_with_trivial_weights() {
    let x = RelMagma::new(Carrier::numbered(1), TernaryRelation::empty(1), None).unwrap();
    let q = enumerate_quantales(1).unwrap().remove(0);
    let r = verify_unit_correspondence(&x, &q, Direction::ReflectToX).unwrap();
    assert_eq!(r.verdict, Verdict::PreconditionFailed);
    assert!(r.side_conditions.iter().any(|c| c.law == "Q:1≠0" && !c.holds));
    assert!(verify_unit_correspondence(&x, &q, Direction::Iff).is_err());
}

fn unital_bimagmas() -> Vec<RelBiMagma> {
    let mut out = Vec::new();
    for n in 1..=2 {
        for b in enumerate_bimagmas(n).unwrap() {
            let (es, ep) = (unit_sets(&b.seq), unit_sets(&b.par));
            for s in &es {
                for p in &ep {
                    out.push(RelBiMagma { units_seq: Some(s.clone()), units_par: Some(p.clone()), ..b.clone() });
                }
            }
        }
    }
    out
}

fn unital_biquantales() -> Vec<BiQuantale> {
    (1..=3)
        .flat_map(|n| enumerate_biquantales(n).unwrap())
        .filter(|q| q.unit_seq.is_some() && q.unit_par.is_some())
        .collect()
}

#[test]
fn unit_inclusion_over_enumerated_structures() {
    let xs = unital_bimagmas();
    let qs = unital_biquantales();
    assert!(!xs.is_empty() && !qs.is_empty());
    let (mut lifted, mut violated) = (0, 0);
    for q in &qs {
        for x in &xs {
            let rs = verify_unit_inclusion(x, q).unwrap();
            assert_eq!(rs.len(), 4);
            for r in &rs {
                assert_ne!(r.verdict, Verdict::Alarm, "{r}");
            }
            if rs[0].verdict == Verdict::Pass {
                lifted += 1;
            }
            let ep_in_es = x.units_par.as_ref().unwrap().iter().all(|e| x.units_seq.as_ref().unwrap().contains(e));
            if !ep_in_es && q.unit_par != Some(q.lattice.bottom()) && rs[3].verdict == Verdict::Pass {
                // the equivalence then forces the function inequality to fail
                violated += 1;
            }
        }
    }
    assert!(lifted >= 3);
    assert!(violated > 0);
}

#[test]
fn unit_inclusion_equality_case() {
    let rs = verify_unit_inclusion(&words(2), &weights::boolean()).unwrap();
    assert!(rs.iter().all(|r| r.verdict == Verdict::Pass));
}

#[test]
fn assoc_comm_examples() {
    let u = BoundedWordUniverse::new(&['a', 'b'], 2).unwrap();
    let w = build_word_bimagma(&u);
    let bq = weights::boolean_quantale();
    let shuffle = verify_assoc_comm_corollaries(&w.retract(convalg::Which::Par), &bq).unwrap();
    let lift = |rs: &[convalg::correspond::CorrespondenceReport], law: &str| {
        rs.iter().find(|r| r.law == law && r.direction == Direction::Lift).unwrap().clone()
    };
    assert_eq!(lift(&shuffle, "comm").verdict, Verdict::Pass);
    assert_eq!(lift(&shuffle, "assoc").verdict, Verdict::Pass);

    let concat = verify_assoc_comm_corollaries(&w.retract(convalg::Which::Seq), &bq).unwrap();
    let iff = concat.iter().find(|r| r.law == "comm" && r.direction == Direction::Iff).unwrap();
    assert_eq!(iff.verdict, Verdict::Pass);
    let refl = concat.iter().find(|r| r.law == "comm" && r.direction == Direction::ReflectToX).unwrap();
    let lifted = refl.side_conditions.iter().find(|c| c.law == "Q^X:comm").unwrap();
    assert!(!lifted.holds);
    assert_eq!(lifted.witness.as_deref(), Some(&["{a: 1}".to_string(), "{b: 1}".to_string()][..]));

    let one = one_point().retract(convalg::Which::Seq);
    assert!(verify_assoc_comm_corollaries(&one, &bq).unwrap().iter().all(|r| r.verdict == Verdict::Pass));
}

#[test]
fn assoc_comm_never_alarm() {
    let mut xs = Vec::new();
    for x in all_magmas() {
        xs.push(x.clone());
        for e in unit_sets(&x.rel) {
            xs.push(RelMagma { units: Some(e), ..x.clone() });
        }
    }
    for q in quantales() {
        for x in &xs {
            for r in verify_assoc_comm_corollaries(x, &q).unwrap() {
                assert_ne!(r.verdict, Verdict::Alarm, "{r}");
            }
        }
    }
}

#[test]
fn redundancy_examples() {
    assert_eq!(verify_rel_redundancy(&words(3)).unwrap().verdict, Verdict::Pass);
    assert_eq!(verify_redundancy(&weights::boolean()).unwrap().verdict, Verdict::Pass);
    let posets = build_type_bimagma(&TypeUniverse::new(3, &[], true).unwrap());
    assert_eq!(verify_rel_redundancy(&posets).unwrap().verdict, Verdict::Pass);
}

#[test]
fn redundancy_never_alarms() {
    for x in unital_bimagmas() {
        assert_ne!(verify_rel_redundancy(&x).unwrap().verdict, Verdict::Alarm);
    }
    // shared sets that are sequential units and only exist as parallel units
    for n in 1..=2 {
        for b in enumerate_bimagmas(n).unwrap() {
            for e in unit_sets(&b.seq) {
                let x = RelBiMagma { units_seq: Some(e.clone()), units_par: Some(e), ..b.clone() };
                let r = verify_rel_redundancy(&x).unwrap();
                assert_ne!(r.verdict, Verdict::Alarm, "{r}");
                if r.verdict == Verdict::Pass {
                    assert!((1..=6).all(|k| Cube::new(&x).ri(k)));
                }
            }
        }
    }
    for q in unital_biquantales() {
        assert_ne!(verify_redundancy(&q).unwrap().verdict, Verdict::Alarm);
    }
}

#[test]
fn interchange_quantale_round_trip() {
    let ms: Vec<RelBiMagma> = (1..=2).flat_map(|n| enumerate_interchange_monoids(n).unwrap()).collect();
    let qs: Vec<BiQuantale> = (1..=3).flat_map(|n| enumerate_interchange_quantales(n).unwrap()).collect();
    assert!(ms.len() > 1 && qs.len() > 1);
    for q in &qs {
        for x in &ms {
            let r = verify_interchange_quantale_lift(x, q).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r}");
        }
    }
    // dropping RI7 is detected, and the lift then fails I7
    let broken = RelBiMagma::new(
        Carrier::numbered(2),
        TernaryRelation::new(2, [(0, 0, 0), (1, 0, 1), (1, 1, 0)]).unwrap(),
        TernaryRelation::new(2, [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]).unwrap(),
        Some(vec![0]),
        Some(vec![0]),
    )
    .unwrap();
    let r = verify_interchange_quantale_lift(&broken, &weights::boolean()).unwrap();
    assert_eq!(r.verdict, Verdict::PreconditionFailed);
    assert!(r.side_conditions.iter().any(|c| c.law == "X:ri7" && !c.holds));
    assert!(!lifted_law_oracle(&broken, &weights::boolean(), 7));

    // dropping I7 on the weights is detected as well
    let x = &ms[0];
    let mut dropped = 0;
    for q in enumerate_biquantales(3).unwrap() {
        let r = verify_interchange_quantale_lift(x, &q).unwrap();
        assert_ne!(r.verdict, Verdict::Alarm);
        let q_i7 = r.side_conditions.iter().find(|c| c.law == "Q:i7").unwrap();
        if !q_i7.holds {
            assert_eq!(r.verdict, Verdict::PreconditionFailed);
            dropped += 1;
        }
    }
    assert!(dropped > 0);
}

#[test]
fn searches_find_the_named_constructions() {
    for scope in Scope::ALL {
        let ws = search_counterexamples(scope, 1_000_000).unwrap();
        assert!(!ws.is_empty(), "{scope}");
        assert_eq!(ws, search_counterexamples(scope, 1_000_000).unwrap());
    }
    let kinds = |scope| -> Vec<Option<String>> {
        search_counterexamples(scope, 1_000_000).unwrap().into_iter().map(|w| w.construction).collect()
    };
    let no_d = kinds(Scope::NoD);
    assert!(no_d.contains(&Some("singleton-q".into())));
    assert!(no_d.contains(&Some("all-zero-product".into())));
    assert!(kinds(Scope::NoRd).contains(&Some("empty-relation".into())));
    let no_rd = search_counterexamples(Scope::NoRd, 1_000_000).unwrap();
    assert!(no_rd.iter().any(|w| w.law == "i7" && w.dropped == "X:rd4"));
}

#[test]
fn search_witnesses_check_out() {
    let qs = small_weights();
    let xs: Vec<RelBiMagma> = (1..=2).flat_map(|n| enumerate_bimagmas(n).unwrap()).collect();
    use convalg::correspond::{describe_bimagma, describe_biquantale};
    for w in search_counterexamples(Scope::NoD, 1_000_000).unwrap() {
        let k: usize = w.law.trim_start_matches("ri").parse().unwrap();
        let x = xs.iter().find(|x| describe_bimagma(x) == w.base).unwrap();
        let q = qs.iter().find(|q| describe_biquantale(q) == w.weights).unwrap();
        assert!(!Cube::new(x).ri(k));
        assert!(lifted_law_oracle(x, q, k));
    }
}

#[test]
fn a_tiny_budget_truncates() {
    assert!(search_counterexamples(Scope::NoD, 0).unwrap().is_empty());
    assert!("no-x".parse::<Scope>().is_err());
    assert_eq!("no-rd".parse::<Scope>().unwrap(), Scope::NoRd);
}
