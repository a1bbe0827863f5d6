//! Series-parallel terms.
//!
//! ```text
//! t ::= letter | "*" | "eps" | t ";" t | t "|" t | "(" t ")"
//! ```
//!
//! `;` is serial and `|` parallel composition. Both associate to the left
//! and `|` binds looser than `;`. A letter is a labeled vertex, `*` an
//! unlabeled one and `eps` the empty graph.

use super::digraph::{par, seq, Digraph};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn par_term(&mut self) -> Result<Digraph> {
        let mut g = self.seq_term()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            g = par(&g, &self.seq_term()?);
        }
        Ok(g)
    }

    fn seq_term(&mut self) -> Result<Digraph> {
        let mut g = self.atom()?;
        while self.peek() == Some(b';') {
            self.pos += 1;
            g = seq(&g, &self.atom()?);
        }
        Ok(g)
    }

    fn atom(&mut self) -> Result<Digraph> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let g = self.par_term()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(g)
            }
            Some(b'*') => {
                self.pos += 1;
                Ok(Digraph::vertex(None))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"eps" => Ok(Digraph::empty()),
                    [c] => Ok(Digraph::vertex(Some(*c as char))),
                    _ => Err(Error::Parse { pos: start, msg: "a vertex is a single letter".into() }),
                }
            }
            Some(_) => self.err("expected a letter, `*`, `eps` or `(`"),
            None => self.err("unexpected end of term"),
        }
    }
}

/// Parses a series-parallel term into a graph.
pub fn parse_term(s: &str) -> Result<Digraph> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let g = p.par_term()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(g)
}

fn subgraph(g: &Digraph, mask: u32) -> Digraph {
    let vs: Vec<usize> = (0..g.len()).filter(|&v| mask >> v & 1 == 1).collect();
    let labels = vs.iter().map(|&v| g.label(v)).collect();
    let adj = vs
        .iter()
        .map(|&u| vs.iter().enumerate().filter(|&(_, &v)| g.has_edge(u, v)).fold(0u32, |a, (j, _)| a | 1 << j))
        .collect();
    Digraph::from_parts(labels, adj)
}

fn full(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// Weakly connected components as vertex masks.
fn components(g: &Digraph) -> Vec<u32> {
    let n = g.len();
    let adj = g.adjacency();
    let mut seen = 0u32;
    let mut out = Vec::new();
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = 1u32 << s;
        loop {
            let mut next = comp;
            for v in (0..n).filter(|&v| comp >> v & 1 == 1) {
                next |= adj[v];
                next |= (0..n).filter(|&u| adj[u] >> v & 1 == 1).fold(0, |a, u| a | 1 << u);
            }
            if next == comp {
                break;
            }
            comp = next;
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

/// The smallest nonempty proper vertex set `A` with every edge `A → rest`
/// present and no edge back, so that `g` is the serial composition of the
/// two induced subgraphs. Such sets form a chain; each candidate is the
/// closure of one vertex under the pairs that violate the cut condition.
fn series_prefix(g: &Digraph) -> Option<u32> {
    let n = g.len();
    let all = full(n);
    let forward = |u: usize, v: usize| g.has_edge(u, v) && !g.has_edge(v, u);
    (0..n)
        .filter_map(|s| {
            let mut a = 1u32 << s;
            loop {
                let grow = (0..n)
                    .filter(|&v| a >> v & 1 == 0)
                    .filter(|&v| (0..n).any(|u| a >> u & 1 == 1 && !forward(u, v)))
                    .fold(0u32, |m, v| m | 1 << v);
                if grow == 0 {
                    break;
                }
                a |= grow;
            }
            (a != all).then_some(a)
        })
        .min_by_key(|a| a.count_ones())
}

fn fallback(g: &Digraph) -> String {
    let labels: String = g.labels().iter().map(|l| l.unwrap_or('*')).collect();
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}>{v}")).collect();
    format!("graph({labels}:{})", edges.join(","))
}

fn render_inner(g: &Digraph) -> (String, bool) {
    match g.len() {
        0 => return ("eps".into(), false),
        1 => return (g.label(0).map_or("*".into(), String::from), false),
        _ => {}
    }
    let comps = components(g);
    if comps.len() > 1 {
        let mut parts: Vec<String> = comps.iter().map(|&m| render_inner(&subgraph(g, m)).0).collect();
        parts.sort();
        return (parts.join("|"), true);
    }
    let mut parts = Vec::new();
    let mut rest = g.clone();
    while let Some(a) = series_prefix(&rest) {
        parts.push(subgraph(&rest, a));
        rest = subgraph(&rest, full(rest.len()) & !a);
    }
    if parts.is_empty() {
        return (fallback(super::canonical(g).representative()), false);
    }
    parts.push(rest);
    let rendered: Vec<String> = parts
        .iter()
        .map(|p| match render_inner(p) {
            (s, true) => format!("({s})"),
            (s, false) => s,
        })
        .collect();
    (rendered.join(";"), false)
}

/// A term for `g` when it is series-parallel, with parallel components
/// sorted; otherwise `graph(labels:edges)` over the canonical
/// representative. Isomorphic graphs render identically.
pub fn render(g: &Digraph) -> String {
    render_inner(g).0
}
