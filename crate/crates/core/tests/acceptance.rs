//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any fails. Pass a substring to run only matching criteria.

mod support;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use convalg::convolution::{
    check_lifted_laws, is_antitone, iterative_star, star_graded, Budget, LiftedAlgebra, LiftedLaw, WeightedFunction,
};
use convalg::correspond::{
    correspondence_suite, describe_bimagma, enumerate_bimagmas, enumerate_biquantales, search_counterexamples,
    unit_sets, Scope, Verdict,
};
use convalg::duality::{sweep_eta, sweep_naturality, sweep_sigma};
use convalg::graphmodels::{
    build_type_bimagma, canonical, isomorphic, parse_term, subsumes, type_subsumes, Digraph, TypeUniverse,
};
use convalg::langmodels::{build_word_bimagma, shuffle, BoundedWordUniverse};
use convalg::order::Preorder;
use convalg::relstruct::{check_rel_weak_eckmann_hilton, check_relational_interchange, RelBiMagma, RelMagma};
use convalg::weights::{self, weak_eckmann_hilton, BiQuantale, KleeneAlgebraTable, OrderedBiMagma};
use convalg::Which;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{eval_elem, interchange_terms, iso_oracle, permutations, ri_oracle, subsumes_oracle, tuples};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn words(alphabet: &[char], max: usize) -> (BoundedWordUniverse, RelBiMagma) {
    let u = BoundedWordUniverse::new(alphabet, max).unwrap();
    let b = build_word_bimagma(&u);
    (u, b)
}

fn posettypes3() -> (TypeUniverse, RelBiMagma) {
    let u = TypeUniverse::new(3, &[], true).unwrap();
    let b = build_type_bimagma(&u);
    (u, b)
}

/// Every law of the lifted algebra on three fixture pairs. On poset types
/// the parallel unit is checked on antitone functions: the parallel relation
/// is down-closed, so `id` is a unit only there.
fn lifting() -> Outcome {
    let (_, w3) = words(&['a', 'b'], 3);
    let (_, w2) = words(&['a', 'b'], 2);
    let (types, pt) = posettypes3();
    let pairs: [(&str, RelBiMagma, BiQuantale, Option<Preorder>); 3] = [
        ("words3 x boolean", w3, weights::boolean(), None),
        ("posettypes3 x boolean", pt, weights::boolean(), Some(types.subsumption_order())),
        ("words2 x minplus3", w2, weights::min_plus(3).unwrap(), None),
    ];
    let mut notes = Vec::new();
    for (name, x, q, antitone) in pairs {
        let start = Instant::now();
        let l = LiftedAlgebra::new(x, q);
        let mut passed = 0;
        for law in LiftedLaw::full_suite() {
            match (&antitone, law) {
                (Some(order), LiftedLaw::Unit(Which::Par)) => {
                    let id = l.unit_function(Which::Par).unwrap();
                    let dom: Vec<WeightedFunction> = l
                        .all_functions()
                        .into_iter()
                        .filter(|f| is_antitone(f, order, &l.weights.lattice))
                        .collect();
                    ensure(is_antitone(&id, order, &l.weights.lattice), || format!("{name}: id is not antitone"))?;
                    for f in &dom {
                        let left = l.convolve(Which::Par, &id, f).unwrap();
                        let right = l.convolve(Which::Par, f, &id).unwrap();
                        ensure(left == *f && right == *f, || format!("{name}: unit-par fails at {}", l.display(f)))?;
                    }
                }
                _ => {
                    let r = check_lifted_laws(&l, law, Budget::default()).unwrap();
                    ensure(r.check.holds, || format!("{name}: {}", r.check))?;
                }
            }
            passed += 1;
        }
        let secs = start.elapsed();
        ensure(secs < Duration::from_secs(60), || format!("{name} took {secs:?}"))?;
        notes.push(format!("{name} {passed} laws in {:.1} s", secs.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn correspondence() -> Outcome {
    let xs = enumerate_bimagmas(2).unwrap();
    let qs = enumerate_biquantales(2).unwrap();
    let candidates = xs.len() * qs.len();
    ensure(candidates <= 1_000_000, || format!("{candidates} candidates exceed the budget"))?;
    let mut verdicts: BTreeMap<String, usize> = BTreeMap::new();
    let mut alarms = Vec::new();
    for x in &xs {
        for q in &qs {
            for r in correspondence_suite(x, q).unwrap() {
                *verdicts.entry(format!("{:?}", r.verdict)).or_default() += 1;
                if r.verdict == Verdict::Alarm {
                    alarms.push(format!("{} on {}", r.law, describe_bimagma(x)));
                }
            }
        }
    }
    ensure(alarms.is_empty(), || format!("{} alarms, first {}", alarms.len(), alarms[0]))?;
    let counts: Vec<String> = verdicts.iter().map(|(v, n)| format!("{n} {v}")).collect();
    Ok(format!("{candidates} pairs, 0 alarms ({})", counts.join(", ")))
}

fn side_conditions() -> Outcome {
    let bases: BTreeMap<String, RelBiMagma> =
        (1..=2).flat_map(|n| enumerate_bimagmas(n).unwrap()).map(|x| (describe_bimagma(&x), x)).collect();
    let mut notes = Vec::new();
    for scope in Scope::ALL {
        let ws = search_counterexamples(scope, 1_000_000).unwrap();
        ensure(!ws.is_empty(), || format!("no witness for {scope}"))?;
        for w in &ws {
            ensure(!w.failure.holds, || format!("{scope}: {} does not fail", w.failure.law))?;
            if scope == Scope::NoD {
                let k: usize = w.law.trim_start_matches("ri").parse().unwrap();
                let x = bases.get(&w.base).ok_or_else(|| format!("unknown base {}", w.base))?;
                ensure(ri_oracle(x, k).is_some(), || format!("ri{k} holds on {}", w.base))?;
            }
        }
        let kinds: BTreeSet<&str> = ws.iter().filter_map(|w| w.construction.as_deref()).collect();
        if scope == Scope::NoD {
            for c in ["singleton-q", "all-zero-product"] {
                ensure(kinds.contains(c), || format!("no-d lacks the {c} construction"))?;
            }
        }
        notes.push(format!("{scope} {}", ws.len()));
    }
    Ok(format!("witnesses: {}", notes.join(", ")))
}

fn graded_star() -> Outcome {
    let k = KleeneAlgebraTable::from_quantale(&weights::boolean_quantale()).unwrap();
    let q = weights::boolean_quantale();
    let (wu, wb) = words(&['a', 'b'], 4);
    let (tu, tb) = posettypes3();
    let cases: [(&str, RelMagma, _); 3] = [
        ("words4 seq", wb.retract(Which::Seq), wu.grading()),
        ("words4 par", wb.retract(Which::Par), wu.grading()),
        ("posettypes3 seq", tb.retract(Which::Seq), tu.grading()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut total = 0;
    for (name, m, g) in cases {
        for i in 0..50 {
            let density = [0.1, 0.3, 0.6][i % 3];
            let f = WeightedFunction::new((0..m.len()).map(|_| rng.gen_bool(density) as usize).collect());
            let s = star_graded(&f, &m, &g, &k).unwrap();
            let it = iterative_star(&f, &m, &q).unwrap();
            ensure(s == it, || format!("{name}: stars differ on {}", f.display(&m.carrier, &q.lattice)))?;
            total += 1;
        }
    }
    Ok(format!("{total} random functions, exact agreement"))
}

/// Distinct interleavings by choosing the positions of `v`'s letters.
fn interleavings(v: &[char], w: &[char]) -> BTreeSet<String> {
    let n = v.len() + w.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == v.len())
        .map(|m| {
            let (mut i, mut j) = (0, 0);
            (0..n)
                .map(|p| {
                    if m >> p & 1 == 1 {
                        i += 1;
                        v[i - 1]
                    } else {
                        j += 1;
                        w[j - 1]
                    }
                })
                .collect()
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn shuffle_counts() -> Outcome {
    let u = BoundedWordUniverse::new(&['a', 'b', 'c'], 7).unwrap();
    let mut pairs = 0;
    for v in u.words() {
        let lv: BTreeSet<char> = v.chars().collect();
        for w in u.words() {
            if v.len() + w.len() > 7 || w.chars().any(|c| lv.contains(&c)) {
                continue;
            }
            let (vc, wc): (Vec<char>, Vec<char>) = (v.chars().collect(), w.chars().collect());
            let oracle = interleavings(&vc, &wc);
            let n = binomial(v.len() + w.len(), v.len());
            ensure(oracle.len() == n, || format!("oracle counts {} for ({v}, {w})", oracle.len()))?;
            ensure(shuffle(v, w) == oracle, || format!("shuffle({v}, {w}) differs from the oracle"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} letter-disjoint pairs"))
}

fn digraph_from_mask(n: usize, mask: u32) -> Digraph {
    let slots = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|(u, v)| u != v);
    Digraph::unlabeled(n, slots.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e)).unwrap()
}

/// One representative per isomorphism class, by least edge set over relabelings.
fn iso_class_reps(n: usize) -> Vec<Digraph> {
    let perms = permutations(n);
    let mut reps: BTreeMap<BTreeSet<(usize, usize)>, Digraph> = BTreeMap::new();
    for mask in 0u32..1 << (n * n.saturating_sub(1)) {
        let g = digraph_from_mask(n, mask);
        let key = perms.iter().map(|p| g.edges().map(|(u, v)| (p[u], p[v])).collect()).min().unwrap();
        reps.entry(key).or_insert(g);
    }
    reps.into_values().collect()
}

fn antisymmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let check = |a: &Digraph, b: &Digraph| -> Result<(), String> {
        let mutual = subsumes_oracle(a, b) && subsumes_oracle(b, a);
        let iso = iso_oracle(a, b);
        ensure(mutual == iso, || format!("mutual subsumption {mutual} but iso {iso}"))?;
        ensure((subsumes(a, b) && subsumes(b, a)) == mutual, || "library subsumption disagrees".into())?;
        ensure(isomorphic(a, b) == iso, || "library isomorphism disagrees".into())
    };
    let mut small = 0;
    let mut classes = 0;
    for n in 0..=4 {
        let reps = iso_class_reps(n);
        classes += reps.len();
        for a in &reps {
            for b in &reps {
                let mut p: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    p.swap(i, rng.gen_range(0..=i));
                }
                check(a, &b.permute(&p))?;
                small += 1;
            }
        }
    }
    let mut random = 0;
    for i in 0..500 {
        let g = digraph_from_mask(6, rng.gen::<u32>() & ((1 << 30) - 1));
        let mut p: Vec<usize> = (0..6).collect();
        for j in (1..6).rev() {
            p.swap(j, rng.gen_range(0..=j));
        }
        let h = match i % 3 {
            0 => g.permute(&p),
            1 => {
                let edges: Vec<(usize, usize)> = g.edges().collect();
                let drop = if edges.is_empty() { None } else { Some(edges[rng.gen_range(0..edges.len())]) };
                Digraph::unlabeled(6, edges.into_iter().filter(|&e| Some(e) != drop)).unwrap().permute(&p)
            }
            _ => digraph_from_mask(6, rng.gen::<u32>() & ((1 << 30) - 1)),
        };
        check(&g, &h)?;
        random += 1;
    }
    Ok(format!("{classes} classes up to 4 vertices ({small} pairs), {random} random 6-vertex pairs"))
}

fn pomset_interchange() -> Outcome {
    let lhs = parse_term("(a|b);(c|d)").unwrap();
    let rhs = parse_term("(a;c)|(b;d)").unwrap();
    ensure(subsumes_oracle(&lhs, &rhs) && subsumes(&lhs, &rhs), || "interchange fails".into())?;
    ensure(!subsumes_oracle(&rhs, &lhs) && !subsumes(&rhs, &lhs), || "converse holds".into())?;
    let (l, r) = (canonical(&lhs), canonical(&rhs));
    ensure(type_subsumes(&l, &r) && !type_subsumes(&r, &l), || "type-level subsumption disagrees".into())?;
    let (_, b) = posettypes3();
    for k in 1..=7 {
        ensure(check_relational_interchange(&b, k).unwrap().holds, || format!("ri{k} fails"))?;
        ensure(ri_oracle(&b, k).is_none(), || format!("oracle finds ri{k} violated"))?;
    }
    Ok(format!("interchange holds, converse fails; ri1..ri7 on {} poset types", b.len()))
}

fn duality() -> Outcome {
    let start = Instant::now();
    let sigma = sweep_sigma(2).unwrap();
    let eta = sweep_eta(3).unwrap();
    let nat = sweep_naturality(2).unwrap();
    for (name, s) in [("sigma", &sigma), ("eta", &eta), ("naturality", &nat)] {
        ensure(s.all_hold(), || format!("{name}: {} failures, first {}", s.failures.len(), s.failures[0]))?;
    }
    let secs = start.elapsed();
    ensure(secs < Duration::from_secs(300), || format!("sweeps took {secs:?}"))?;
    Ok(format!("sigma {} algebras, eta {} magmas, naturality {} squares", sigma.checked, eta.checked, nat.checked))
}

fn ordered_law(m: &OrderedBiMagma, k: usize) -> bool {
    let (lhs, rhs, vars) = interchange_terms(k);
    let (s, p) = (|a, b| m.seq.get(a, b), |a, b| m.par.get(a, b));
    tuples(m.len(), vars).iter().all(|vs| m.order.leq(eval_elem(&lhs, vs, &s, &p), eval_elem(&rhs, vs, &s, &p)))
}

fn eckmann_hilton() -> Outcome {
    let mut ordered = 0;
    for m in (1..=2).flat_map(OrderedBiMagma::enumerate_unital) {
        if !ordered_law(&m, 7) {
            continue;
        }
        ordered += 1;
        let (us, up) = (m.unit_seq.unwrap(), m.unit_par.unwrap());
        ensure(m.order.leq(us, up), || format!("unit_seq > unit_par in {m:?}"))?;
        if m.order.leq(up, us) {
            for k in 1..=6 {
                ensure(ordered_law(&m, k), || format!("i{k} fails with shared unit in {m:?}"))?;
            }
        }
        let dom: Vec<usize> = (0..m.len()).collect();
        ensure(weak_eckmann_hilton(&m, &dom).unwrap().all_hold(), || "library report disagrees".into())?;
    }
    let mut relational = 0;
    let mut shared = 0;
    for x in (1..=2).flat_map(|n| enumerate_bimagmas(n).unwrap()) {
        if ri_oracle(&x, 7).is_some() {
            continue;
        }
        for es in unit_sets(&x.seq) {
            for ep in unit_sets(&x.par) {
                relational += 1;
                ensure(es.iter().all(|e| ep.contains(e)), || format!("E_seq ⊄ E_par in {}", describe_bimagma(&x)))?;
                let b = RelBiMagma::new(x.carrier.clone(), x.seq.clone(), x.par.clone(), Some(es.clone()), Some(ep.clone()))
                    .unwrap();
                if es == ep {
                    shared += 1;
                    for k in 1..=6 {
                        ensure(ri_oracle(&b, k).is_none(), || format!("ri{k} fails in {}", describe_bimagma(&b)))?;
                    }
                }
                ensure(check_rel_weak_eckmann_hilton(&b).unwrap().all_hold(), || "library report disagrees".into())?;
            }
        }
    }
    ensure(ordered > 0 && shared > 0, || "nothing to check".into())?;
    Ok(format!("{ordered} ordered bi-magmas with i7; {relational} unital relational ones with ri7, {shared} with shared units"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("lifting", lifting),
        ("correspondence", correspondence),
        ("side conditions", side_conditions),
        ("graded star", graded_star),
        ("shuffle counts", shuffle_counts),
        ("graph antisymmetry", antisymmetry),
        ("pomset interchange", pomset_interchange),
        ("duality", duality),
        ("eckmann-hilton", eckmann_hilton),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {} {name}: pass ({detail}; {secs:.1} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}; {secs:.1} s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
