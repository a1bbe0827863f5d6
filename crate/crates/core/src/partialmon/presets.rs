use super::monoid::{PartialMonoid, PartialOp};
use super::pim::PartialInterchangeMonoid;
use crate::order::Preorder;
use crate::relstruct::Carrier;

/// Closed intervals `[p,q]` over the points `0..n`, composed by fusion
/// `[p,q][q,s] = [p,s]`. Units are the point intervals.
pub fn intervals(n: usize) -> PartialMonoid {
    let ivs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p..n).map(move |q| (p, q))).collect();
    let idx = |iv: (usize, usize)| ivs.iter().position(|&v| v == iv).expect("interval in list");
    let carrier = Carrier::new(ivs.iter().map(|(p, q)| format!("[{p},{q}]"))).expect("distinct names");
    let mut entries = Vec::new();
    for (y, &(p, q)) in ivs.iter().enumerate() {
        for (z, &(r, s)) in ivs.iter().enumerate() {
            if q == r {
                entries.push((y, z, idx((p, s))));
            }
        }
    }
    let units = ivs.iter().enumerate().filter(|(_, (p, q))| p == q).map(|(i, _)| i).collect();
    let op = PartialOp::new(ivs.len(), entries).expect("fusion is a partial function");
    PartialMonoid::new(carrier, op, units).expect("consistent sizes")
}

/// `intervals(3)`: six intervals, three units.
pub fn interval3() -> PartialMonoid {
    intervals(3)
}

/// Ordered pairs over `points`, composed by `(w,x)(x,z) = (w,z)`. Every
/// diagonal pair is a unit. Pair `(x,y)` is named by concatenating the
/// point names.
pub fn pairs(points: &[&str]) -> PartialMonoid {
    let n = points.len();
    let carrier = Carrier::new((0..n * n).map(|i| format!("{}{}", points[i / n], points[i % n]))).expect("distinct names");
    let mut entries = Vec::new();
    for w in 0..n {
        for x in 0..n {
            for z in 0..n {
                entries.push((w * n + x, x * n + z, w * n + z));
            }
        }
    }
    let units = (0..n).map(|x| x * n + x).collect();
    PartialMonoid::new(carrier, PartialOp::new(n * n, entries).expect("functional"), units).expect("consistent sizes")
}

/// `pairs(["a", "b"])`.
pub fn pair2() -> PartialMonoid {
    pairs(&["a", "b"])
}

/// Partial functions from `1..=locations` to `values` (heaplets), composed
/// by union of functions with disjoint domains. The empty heap `emp` is the
/// unit. A heaplet is named by its `location value` pairs, e.g. `1a2b`.
pub fn heaplets(locations: usize, values: &[&str]) -> PartialMonoid {
    let base = values.len() + 1;
    let count = base.pow(locations as u32);
    // digit 0 = unallocated; digit v+1 = values[v]
    let digits = |h: usize| -> Vec<usize> { (0..locations).map(|l| h / base.pow(l as u32) % base).collect() };
    let name = |h: usize| -> String {
        let s: String = digits(h)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(l, &d)| format!("{}{}", l + 1, values[d - 1]))
            .collect();
        if s.is_empty() {
            "emp".to_string()
        } else {
            s
        }
    };
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&h| (digits(h).iter().filter(|&&d| d != 0).count(), name(h)));
    let pos: Vec<usize> = {
        let mut p = vec![0; count];
        for (i, &h) in order.iter().enumerate() {
            p[h] = i;
        }
        p
    };
    let carrier = Carrier::new(order.iter().map(|&h| name(h))).expect("distinct names");
    let mut entries = Vec::new();
    for &g in &order {
        for &h in &order {
            let (dg, dh) = (digits(g), digits(h));
            if dg.iter().zip(&dh).all(|(&a, &b)| a == 0 || b == 0) {
                entries.push((pos[g], pos[h], pos[g + h]));
            }
        }
    }
    PartialMonoid::new(carrier, PartialOp::new(count, entries).expect("functional"), vec![0]).expect("consistent sizes")
}

/// `heaplets(2, ["a", "b"])`: nine heaplets.
pub fn heaplet22() -> PartialMonoid {
    heaplets(2, &["a", "b"])
}

/// The three-element structure on `{e, a, b}` with `D_s = {(a,a)}` plus the
/// unit pairs, total `D_p`, `a;a = b`, `a|a = a`, `a|b = b|a = b|b = b`
/// and `b ≺ a`. The small law `D_s x y ⇒ x;y ⪯ x|y` holds, yet with both
/// relations equality-encoded the sequential relation is not contained in
/// the parallel one.
pub fn counterexample_s9() -> PartialInterchangeMonoid {
    let carrier = Carrier::new(["e", "a", "b"]).expect("distinct names");
    let (e, a, b) = (0, 1, 2);
    let unit_rows = |n: usize| (0..n).flat_map(move |x| [(e, x, x), (x, e, x)]).collect::<Vec<_>>();
    let mut seq = unit_rows(3);
    seq.push((a, a, b));
    let mut par = unit_rows(3);
    par.extend([(a, a, a), (a, b, b), (b, a, b), (b, b, b)]);
    let preorder = Preorder::closure_of(3, [(b, a)]);
    PartialInterchangeMonoid::new(
        carrier,
        preorder,
        PartialOp::new(3, seq).expect("functional"),
        PartialOp::new(3, par).expect("functional"),
        vec![e],
        vec![e],
    )
    .expect("consistent sizes")
}

/// The one-point partial interchange monoid `{e}`.
pub fn one_point() -> PartialInterchangeMonoid {
    let op = PartialOp::new(1, [(0, 0, 0)]).expect("functional");
    PartialInterchangeMonoid::new(Carrier::new(["e"]).expect("one name"), Preorder::discrete(1), op.clone(), op, vec![0], vec![0])
        .expect("consistent sizes")
}
