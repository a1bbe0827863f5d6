//! The `pomset` verb.

use convalg::graphmodels::{isomorphic, par, parse_term, render, seq, subsumes, Digraph};
use convalg::{Error, Result};

/// Result of a pomset query: a term to print or a yes/no answer.
pub enum Answer {
    Term(String),
    Bool(bool),
}

pub fn run(t1: &str, op: Option<&str>, t2: Option<&str>) -> Result<Answer> {
    let g1 = parse_term(t1)?;
    let second = || -> Result<Digraph> {
        let t = t2.ok_or_else(|| usage(&format!("`{}` needs a second term", op.unwrap_or_default())))?;
        parse_term(t)
    };
    let unary = |a: Answer| if t2.is_some() { Err(usage("unexpected second term")) } else { Ok(a) };
    match op {
        None => unary(Answer::Term(render(&g1))),
        Some("seq") => Ok(Answer::Term(render(&seq(&g1, &second()?)))),
        Some("par") => Ok(Answer::Term(render(&par(&g1, &second()?)))),
        // English reading: t1 is the more general term, so t2 ⪯ t1.
        Some("subsumes") => Ok(Answer::Bool(subsumes(&second()?, &g1))),
        Some("subsumed-by") => Ok(Answer::Bool(subsumes(&g1, &second()?))),
        Some("iso") => Ok(Answer::Bool(isomorphic(&g1, &second()?))),
        Some("subsumed-by-par-of-seqs") => {
            let [a, b, c, d] = interchange_parts(t1)?;
            let rhs = parse_term(&format!("({a};{c})|({b};{d})"))?;
            unary(Answer::Bool(subsumes(&g1, &rhs)))
        }
        Some(other) => Err(usage(&format!(
            "unknown pomset operation `{other}` (expected seq, par, subsumes, subsumed-by, iso or subsumed-by-par-of-seqs)"
        ))),
    }
}

fn usage(msg: &str) -> Error {
    Error::Parse { pos: 0, msg: msg.to_string() }
}

/// Splits `s` at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

/// Drops parentheses enclosing the whole of `s`.
fn strip_parens(s: &str) -> &str {
    if !s.starts_with('(') {
        return s;
    }
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 {
            return if i + 1 == s.len() { strip_parens(s[1..i].trim()) } else { s };
        }
    }
    s
}

/// Reads `(a|b);(c|d)` as `[a, b, c, d]`.
fn interchange_parts(t: &str) -> Result<[String; 4]> {
    let shape = || usage(&format!("`{t}` is not of the form (A|B);(C|D)"));
    let halves = split_top(strip_parens(t.trim()), ';');
    let [left, right] = halves.as_slice() else { return Err(shape()) };
    let l = split_top(strip_parens(left), '|');
    let r = split_top(strip_parens(right), '|');
    match (l.as_slice(), r.as_slice()) {
        ([a, b], [c, d]) => Ok([a, b, c, d].map(|s| s.to_string())),
        _ => Err(shape()),
    }
}
