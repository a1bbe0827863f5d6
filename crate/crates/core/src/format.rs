//! JSON structure files.
//!
//! Every file is an object with `"schema": 1` and a `"kind"`:
//!
//! | kind | fields |
//! |------|--------|
//! | `quantale` | `carrier`, `order`, `comp`, `unit`? |
//! | `biquantale` | `carrier`, `order`, `seq`, `par`, `unit_seq`?, `unit_par`? |
//! | `relmagma` | `carrier`, `relation`, `units`?, `grading`? |
//! | `relbimagma` | `carrier`, `seq`, `par`, `units_seq`?, `units_par`?, `grading`? |
//! | `partialmonoid` | `carrier`, `comp`, `units`, `preorder`? |
//! | `pim` | `carrier`, `seq`, `par`, `units_seq`, `units_par`, `preorder`?, `par_encoding`? |
//! | `graph` | `term`, or `vertices` and `edges` |
//! | `universe` | `model` (`words`, `poset-types`, `graph-types`), `alphabet`?, `max` |
//!
//! Orders are lists of pairs `[a, b]` for `a ≤ b`, closed reflexively and
//! transitively on load. Quantale tables are rows of element names.
//! Relations and partial operations are lists of triples `[x, y, z]`
//! meaning `x` splits into `y` then `z` (for a partial operation,
//! `y ⊗ z = x`). A grading maps element names to grades.
//!
//! Structures are named either by a path or by one of the bundled
//! [`FIXTURES`] and [`PRESETS`]; see [`resolve`].
//!
//! ```
//! use convalg::format::{parse, Structure};
//!
//! let src = r#"{"schema": 1, "kind": "relmagma", "carrier": ["e"], "relation": [["e", "e", "e"]], "units": ["e"]}"#;
//! let Structure::RelMagma { magma, .. } = parse(src).unwrap() else { panic!() };
//! assert_eq!(magma.len(), 1);
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graphmodels::{build_type_bimagma, parse_term, Digraph, TypeUniverse};
use crate::langmodels::{build_word_bimagma, BoundedWordUniverse};
use crate::order::Preorder;
use crate::partialmon::{self, Encoding, PartialInterchangeMonoid, PartialMonoid, PartialOp, PreorderedPartialMonoid};
use crate::relstruct::{Carrier, Grading, RelBiMagma, RelMagma, TernaryRelation};
use crate::weights::{BiQuantale, FiniteLattice, FiniteQuantale, Table};

pub const SCHEMA_VERSION: u64 = 1;

/// Bundled structure files, by name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("words2", include_str!("../fixtures/words2.json")),
    ("posettypes3", include_str!("../fixtures/posettypes3.json")),
    ("counterexample-s9", include_str!("../fixtures/counterexample-s9.json")),
    ("boolean", include_str!("../fixtures/boolean.json")),
    ("minplus3", include_str!("../fixtures/minplus3.json")),
];

/// Named partial-monoid constructions.
pub const PRESETS: &[&str] = &["interval3", "pair2", "heaplet22", "counterexample-s9"];

type Triple = [String; 3];
type Pair = [String; 2];

/// The on-disk form, without the `schema` field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Document {
    Quantale {
        carrier: Vec<String>,
        #[serde(default)]
        order: Vec<Pair>,
        comp: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<String>,
    },
    Biquantale {
        carrier: Vec<String>,
        #[serde(default)]
        order: Vec<Pair>,
        seq: Vec<Vec<String>>,
        par: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit_seq: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit_par: Option<String>,
    },
    Relmagma {
        carrier: Vec<String>,
        relation: Vec<Triple>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        units: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<BTreeMap<String, usize>>,
    },
    Relbimagma {
        carrier: Vec<String>,
        seq: Vec<Triple>,
        par: Vec<Triple>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        units_seq: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        units_par: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<BTreeMap<String, usize>>,
    },
    Partialmonoid {
        carrier: Vec<String>,
        comp: Vec<Triple>,
        units: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        preorder: Option<Vec<Pair>>,
    },
    Pim {
        carrier: Vec<String>,
        seq: Vec<Triple>,
        par: Vec<Triple>,
        units_seq: Vec<String>,
        units_par: Vec<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        preorder: Vec<Pair>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        par_encoding: Option<Encoding>,
    },
    Graph {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        term: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<Vec<Option<char>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edges: Option<Vec<[usize; 2]>>,
    },
    Universe {
        model: UniverseModel,
        #[serde(default)]
        alphabet: String,
        max: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniverseModel {
    Words,
    PosetTypes,
    GraphTypes,
}

/// A loaded structure.
#[derive(Debug, Clone)]
pub enum Structure {
    Quantale(FiniteQuantale),
    BiQuantale(BiQuantale),
    RelMagma { magma: RelMagma, grading: Option<Grading> },
    RelBiMagma { bimagma: RelBiMagma, grading: Option<Grading> },
    PartialMonoid(PartialMonoid),
    PreorderedPartialMonoid(PreorderedPartialMonoid),
    Pim { pim: PartialInterchangeMonoid, encoding: Encoding },
    Graph(Digraph),
    /// A bounded word or type universe, built as a relational bi-magma.
    Universe { model: UniverseModel, bimagma: RelBiMagma, grading: Grading },
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Quantale(_) => "quantale",
            Structure::BiQuantale(_) => "biquantale",
            Structure::RelMagma { .. } => "relmagma",
            Structure::RelBiMagma { .. } => "relbimagma",
            Structure::PartialMonoid(_) | Structure::PreorderedPartialMonoid(_) => "partialmonoid",
            Structure::Pim { .. } => "pim",
            Structure::Graph(_) => "graph",
            Structure::Universe { .. } => "universe",
        }
    }

    /// The structure as a relational bi-magma, with its grading if known.
    /// A single relation is used for both compositions.
    pub fn to_bimagma(&self) -> Result<(RelBiMagma, Option<Grading>)> {
        Ok(match self {
            Structure::RelMagma { magma, grading } => (RelBiMagma::diagonal(magma), grading.clone()),
            Structure::RelBiMagma { bimagma, grading } => (bimagma.clone(), grading.clone()),
            Structure::Universe { bimagma, grading, .. } => (bimagma.clone(), Some(grading.clone())),
            Structure::PartialMonoid(pm) => (RelBiMagma::diagonal(&partialmon::to_relational(pm)), None),
            Structure::PreorderedPartialMonoid(pm) => {
                (RelBiMagma::diagonal(&partialmon::to_relational_preordered(pm)), None)
            }
            Structure::Pim { pim, encoding } => (partialmon::pim_to_bimagma(pim, *encoding)?, None),
            other => {
                return Err(Error::Schema(format!("a {} is not a relational structure", other.kind())));
            }
        })
    }

    /// The structure as weights. A quantale is used for both compositions.
    pub fn to_biquantale(&self) -> Result<BiQuantale> {
        match self {
            Structure::Quantale(q) => Ok(BiQuantale::diagonal(q)),
            Structure::BiQuantale(q) => Ok(q.clone()),
            other => Err(Error::Schema(format!("a {} cannot be used as weights", other.kind()))),
        }
    }
}

/// Parses a structure file.
pub fn parse(src: &str) -> Result<Structure> {
    let mut v: Value = serde_json::from_str(src).map_err(|e| Error::Schema(e.to_string()))?;
    let obj = v.as_object_mut().ok_or_else(|| Error::Schema("expected a JSON object".into()))?;
    match obj.remove("schema") {
        Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(other) => return Err(Error::Schema(format!("unsupported schema {other}"))),
        None => return Err(Error::Schema("missing `schema` field".into())),
    }
    let doc: Document = serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))?;
    build(&doc)
}

/// Serializes a document with the schema field first. Arrays of scalars,
/// and arrays of those, stay on one line.
pub fn to_json(doc: &Document) -> String {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), Value::from(SCHEMA_VERSION));
    if let Value::Object(m) = serde_json::to_value(doc).expect("documents serialize") {
        out.extend(m);
    }
    let mut s = String::new();
    write_value(&mut s, &Value::Object(out), 0);
    s.push('\n');
    s
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn write_value(s: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(m) => {
            s.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                s.push_str(&format!("{pad}{}: ", Value::from(k.as_str())));
                write_value(s, x, indent + 1);
                s.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            s.push_str(&"  ".repeat(indent));
            s.push('}');
        }
        Value::Array(xs) if !xs.iter().all(is_flat) => {
            s.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                s.push_str(&pad);
                write_value(s, x, indent + 1);
                s.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            s.push_str(&"  ".repeat(indent));
            s.push(']');
        }
        Value::Array(xs) => {
            s.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                write_value(s, x, indent);
            }
            s.push(']');
        }
        scalar => s.push_str(&scalar.to_string()),
    }
}

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn preset(name: &str) -> Option<Structure> {
    Some(match name {
        "interval3" => Structure::PartialMonoid(partialmon::presets::interval3()),
        "pair2" => Structure::PartialMonoid(partialmon::presets::pair2()),
        "heaplet22" => Structure::PartialMonoid(partialmon::presets::heaplet22()),
        "counterexample-s9" => {
            Structure::Pim { pim: partialmon::presets::counterexample_s9(), encoding: Encoding::Equality }
        }
        _ => return None,
    })
}

/// Loads a structure from a path, or else by fixture or preset name. A
/// trailing `.json` is ignored when looking up names.
pub fn resolve(arg: &str) -> Result<Structure> {
    let path = Path::new(arg);
    if path.is_file() {
        let src = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{arg}: {e}")))?;
        return parse(&src);
    }
    let name = arg.strip_suffix(".json").unwrap_or(arg);
    if let Some(src) = fixture(name) {
        return parse(src);
    }
    preset(name).ok_or_else(|| Error::Schema(format!("`{arg}` is neither a file, a fixture nor a preset")))
}

fn carrier(names: &[String]) -> Result<Arc<Carrier>> {
    Carrier::new(names.iter().cloned())
}

fn idx(c: &Carrier, name: &str) -> Result<usize> {
    c.index_of(name)
}

fn triples(c: &Carrier, ts: &[Triple]) -> Result<Vec<(usize, usize, usize)>> {
    ts.iter().map(|[x, y, z]| Ok((idx(c, x)?, idx(c, y)?, idx(c, z)?))).collect()
}

fn names(c: &Carrier, xs: &[String]) -> Result<Vec<usize>> {
    xs.iter().map(|x| idx(c, x)).collect()
}

fn preorder(c: &Carrier, pairs: &[Pair]) -> Result<Preorder> {
    let ps = pairs.iter().map(|[a, b]| Ok((idx(c, a)?, idx(c, b)?))).collect::<Result<Vec<_>>>()?;
    Ok(Preorder::closure_of(c.len(), ps))
}

fn lattice(c: &Carrier, pairs: &[Pair]) -> Result<FiniteLattice> {
    let p = preorder(c, pairs)?;
    FiniteLattice::new(c.names().to_vec(), |a, b| p.leq(a, b))
}

fn table(c: &Carrier, rows: &[Vec<String>]) -> Result<Table> {
    let n = c.len();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Schema(format!("a table over {n} elements needs {n} rows of {n}")));
    }
    let cells = rows.iter().flatten().map(|s| idx(c, s)).collect::<Result<Vec<_>>>()?;
    Table::new(n, cells)
}

fn grading(c: &Carrier, g: &Option<BTreeMap<String, usize>>) -> Result<Option<Grading>> {
    let Some(g) = g else { return Ok(None) };
    let mut grades = vec![None; c.len()];
    for (k, &v) in g {
        grades[idx(c, k)?] = Some(v);
    }
    let grades = grades
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Schema(format!("no grade for `{}`", c.name(i)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(Grading(grades)))
}

fn opt_idx(c: &Carrier, s: &Option<String>) -> Result<Option<usize>> {
    s.as_deref().map(|s| idx(c, s)).transpose()
}

fn opt_names(c: &Carrier, s: &Option<Vec<String>>) -> Result<Option<Vec<usize>>> {
    s.as_deref().map(|s| names(c, s)).transpose()
}

/// Builds the structure a document describes.
pub fn build(doc: &Document) -> Result<Structure> {
    Ok(match doc {
        Document::Quantale { carrier: cs, order, comp, unit } => {
            let c = carrier(cs)?;
            Structure::Quantale(FiniteQuantale::new(lattice(&c, order)?, table(&c, comp)?, opt_idx(&c, unit)?)?)
        }
        Document::Biquantale { carrier: cs, order, seq, par, unit_seq, unit_par } => {
            let c = carrier(cs)?;
            Structure::BiQuantale(BiQuantale::new(
                lattice(&c, order)?,
                table(&c, seq)?,
                table(&c, par)?,
                opt_idx(&c, unit_seq)?,
                opt_idx(&c, unit_par)?,
            )?)
        }
        Document::Relmagma { carrier: cs, relation, units, grading: g } => {
            let c = carrier(cs)?;
            let rel = TernaryRelation::new(c.len(), triples(&c, relation)?)?;
            let grading = grading(&c, g)?;
            Structure::RelMagma { magma: RelMagma::new(c.clone(), rel, opt_names(&c, units)?)?, grading }
        }
        Document::Relbimagma { carrier: cs, seq, par, units_seq, units_par, grading: g } => {
            let c = carrier(cs)?;
            let (n, s, p) = (c.len(), triples(&c, seq)?, triples(&c, par)?);
            let b = RelBiMagma::new(
                c.clone(),
                TernaryRelation::new(n, s)?,
                TernaryRelation::new(n, p)?,
                opt_names(&c, units_seq)?,
                opt_names(&c, units_par)?,
            )?;
            Structure::RelBiMagma { bimagma: b, grading: grading(&c, g)? }
        }
        Document::Partialmonoid { carrier: cs, comp, units, preorder: pre } => {
            let c = carrier(cs)?;
            let op = PartialOp::new(c.len(), triples(&c, comp)?.into_iter().map(|(x, y, z)| (y, z, x)))?;
            let monoid = PartialMonoid::new(c.clone(), op, names(&c, units)?)?;
            match pre {
                None => Structure::PartialMonoid(monoid),
                Some(ps) => {
                    let preorder = preorder(&c, ps)?;
                    Structure::PreorderedPartialMonoid(PreorderedPartialMonoid { monoid, preorder })
                }
            }
        }
        Document::Pim { carrier: cs, seq, par, units_seq, units_par, preorder: pre, par_encoding } => {
            let c = carrier(cs)?;
            let n = c.len();
            let op = |ts: &[Triple]| -> Result<PartialOp> {
                PartialOp::new(n, triples(&c, ts)?.into_iter().map(|(x, y, z)| (y, z, x)))
            };
            let pim = PartialInterchangeMonoid::new(
                c.clone(),
                preorder(&c, pre)?,
                op(seq)?,
                op(par)?,
                names(&c, units_seq)?,
                names(&c, units_par)?,
            )?;
            Structure::Pim { pim, encoding: par_encoding.unwrap_or(Encoding::Preorder) }
        }
        Document::Graph { term, vertices, edges } => match (term, vertices) {
            (Some(t), None) if edges.is_none() => Structure::Graph(parse_term(t)?),
            (None, Some(vs)) => {
                let es = edges.clone().unwrap_or_default().into_iter().map(|[a, b]| (a, b));
                Structure::Graph(Digraph::new(vs.clone(), es)?)
            }
            _ => return Err(Error::Schema("a graph has either a `term` or `vertices` and `edges`".into())),
        },
        Document::Universe { model, alphabet, max } => {
            let letters: Vec<char> = alphabet.chars().collect();
            let (bimagma, grading) = match model {
                UniverseModel::Words => {
                    let u = BoundedWordUniverse::new(&letters, *max)?;
                    (build_word_bimagma(&u), u.grading())
                }
                UniverseModel::PosetTypes | UniverseModel::GraphTypes => {
                    let u = TypeUniverse::new(*max, &letters, *model == UniverseModel::PosetTypes)?;
                    (build_type_bimagma(&u), u.grading())
                }
            };
            Structure::Universe { model: *model, bimagma, grading }
        }
    })
}

fn name_triples(c: &Carrier, r: &TernaryRelation) -> Vec<Triple> {
    r.triples().map(|(x, y, z)| [c.name(x).into(), c.name(y).into(), c.name(z).into()]).collect()
}

fn name_list(c: &Carrier, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| c.name(x).to_string()).collect()
}

fn strict_pairs(l: &FiniteLattice) -> Vec<Pair> {
    let n = l.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && l.leq(a, b))
        .map(|(a, b)| [l.name(a).to_string(), l.name(b).to_string()])
        .collect()
}

fn name_rows(l: &FiniteLattice, t: &Table) -> Vec<Vec<String>> {
    (0..l.len()).map(|a| (0..l.len()).map(|b| l.name(t.get(a, b)).to_string()).collect()).collect()
}

fn grading_map(c: &Carrier, g: &Option<Grading>) -> Option<BTreeMap<String, usize>> {
    g.as_ref().map(|g| (0..c.len()).map(|x| (c.name(x).to_string(), g.grade(x))).collect())
}

impl Document {
    pub fn from_quantale(q: &FiniteQuantale) -> Self {
        let l = &q.lattice;
        Document::Quantale {
            carrier: l.names().to_vec(),
            order: strict_pairs(l),
            comp: name_rows(l, &q.comp),
            unit: q.unit.map(|u| l.name(u).to_string()),
        }
    }

    pub fn from_biquantale(q: &BiQuantale) -> Self {
        let l = &q.lattice;
        Document::Biquantale {
            carrier: l.names().to_vec(),
            order: strict_pairs(l),
            seq: name_rows(l, &q.seq),
            par: name_rows(l, &q.par),
            unit_seq: q.unit_seq.map(|u| l.name(u).to_string()),
            unit_par: q.unit_par.map(|u| l.name(u).to_string()),
        }
    }

    pub fn from_relmagma(m: &RelMagma, grading: &Option<Grading>) -> Self {
        let c = &m.carrier;
        Document::Relmagma {
            carrier: c.names().to_vec(),
            relation: name_triples(c, &m.rel),
            units: m.units.as_deref().map(|u| name_list(c, u)),
            grading: grading_map(c, grading),
        }
    }

    pub fn from_relbimagma(b: &RelBiMagma, grading: &Option<Grading>) -> Self {
        let c = &b.carrier;
        Document::Relbimagma {
            carrier: c.names().to_vec(),
            seq: name_triples(c, &b.seq),
            par: name_triples(c, &b.par),
            units_seq: b.units_seq.as_deref().map(|u| name_list(c, u)),
            units_par: b.units_par.as_deref().map(|u| name_list(c, u)),
            grading: grading_map(c, grading),
        }
    }

    pub fn from_pim(p: &PartialInterchangeMonoid, encoding: Encoding) -> Self {
        let c = &p.carrier;
        let op = |o: &PartialOp| -> Vec<Triple> {
            o.entries().map(|(y, z, x)| [c.name(x).into(), c.name(y).into(), c.name(z).into()]).collect()
        };
        let n = c.len();
        let preorder = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && p.preorder.leq(a, b))
            .map(|(a, b)| [c.name(a).to_string(), c.name(b).to_string()])
            .collect();
        Document::Pim {
            carrier: c.names().to_vec(),
            seq: op(&p.seq),
            par: op(&p.par),
            units_seq: name_list(c, &p.units_seq),
            units_par: name_list(c, &p.units_par),
            preorder,
            par_encoding: Some(encoding),
        }
    }
}
