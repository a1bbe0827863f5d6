//! `convalg`: check algebraic laws of finite structures from the command line.
//!
//! Exit status is 0 when every selected law holds, 1 when one fails and 2
//! on input errors.

mod check;
mod pomset;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use convalg::convolution::{
    check_lifted_suite, iterative_star, star_graded, Budget, LiftedAlgebra, LiftedLaw, WeightedFunction,
};
use convalg::correspond::{correspondence_suite, search_counterexamples, Scope, Verdict};
use convalg::duality::{self, RelMorphism};
use convalg::format::{resolve, Structure, SCHEMA_VERSION};
use convalg::partialmon;
use convalg::relstruct::RelMagma;
use convalg::weights::{BiQuantale, KleeneAlgebraTable};
use convalg::{Error, LawCheck, LawReport, Which};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "convalg", version, about = "Convolution algebras and interchange laws on finite structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the laws of a structure.
    Check {
        /// Structure file, fixture or preset name.
        structure: String,
        /// Check only this law (repeatable).
        #[arg(long, conflicts_with = "all")]
        law: Vec<String>,
        /// Check every available law, including optional conditions.
        #[arg(long)]
        all: bool,
        /// Also write a JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Convolve two weighted functions.
    Convolve {
        structure: String,
        /// A weighted function such as `{a: 1, b: 1}`.
        f: String,
        g: String,
        /// Weight bi-quantale.
        #[arg(long, default_value = "boolean")]
        weights: String,
        #[arg(long, value_enum, default_value_t = Rel::Seq)]
        rel: Rel,
    },
    /// Kleene star of a weighted function over a graded structure.
    Star {
        structure: String,
        f: String,
        #[arg(long, default_value = "boolean")]
        weights: String,
        /// Compute the star as a least fixpoint instead of by grade.
        #[arg(long)]
        iterate: bool,
    },
    /// Check laws of the convolution algebra of a structure and weights.
    Lift {
        structure: String,
        weights: String,
        #[arg(long, value_enum, default_value_t = LiftSuite::Interchange)]
        suite: LiftSuite,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Series-parallel pomset terms: canonical forms, composition and subsumption.
    Pomset {
        term: String,
        /// seq, par, subsumes, subsumed-by, iso or subsumed-by-par-of-seqs.
        op: Option<String>,
        other: Option<String>,
    },
    /// Search for instances showing that a side condition is needed.
    Search {
        /// no-d, no-rd, no-unit or all.
        #[arg(long, default_value = "all")]
        scope: String,
        /// Largest number of instance pairs examined per scope.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Duality between relational magmas and atomic Boolean prequantales.
    Duality {
        /// Check one structure instead of running the enumerated sweeps.
        structure: Option<String>,
        #[arg(long, value_enum, default_value_t = DualitySuite::All)]
        suite: DualitySuite,
        /// Largest number of points or atoms in the sweeps.
        #[arg(long, default_value_t = 2)]
        max: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rel {
    Seq,
    Par,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftSuite {
    Interchange,
    Full,
    Correspondence,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DualitySuite {
    Sigma,
    Eta,
    Naturality,
    All,
}

fn print_checks(checks: &[LawCheck]) {
    let width = checks.iter().map(|c| c.law.chars().count()).max().unwrap_or(0);
    for c in checks {
        print!("{:<width$}  {}", c.law, if c.holds { "pass" } else { "FAIL" });
        if let Some(w) = &c.witness {
            print!("  witness ({})", w.join(", "));
        }
        if let Some(n) = &c.note {
            print!("  [{n}]");
        }
        println!();
    }
}

/// Errors surfaced as exit status 2.
#[derive(Debug)]
enum CliError {
    Input(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e)
    }
}

type Outcome = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { structure, law, all, json } => cmd_check(&structure, &law, all, json.as_deref()),
        Command::Convolve { structure, f, g, weights, rel } => cmd_convolve(&structure, &f, &g, &weights, rel),
        Command::Star { structure, f, weights, iterate } => cmd_star(&structure, &f, &weights, iterate),
        Command::Lift { structure, weights, suite, json } => cmd_lift(&structure, &weights, suite, json.as_deref()),
        Command::Pomset { term, op, other } => cmd_pomset(&term, op.as_deref(), other.as_deref()),
        Command::Search { scope, budget, json } => cmd_search(&scope, budget, json.as_deref()),
        Command::Duality { structure, suite, max, json } => {
            cmd_duality(structure.as_deref(), suite, max, json.as_deref())
        }
    }
}

fn write_json(path: Option<&Path>, mut v: Value) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    if let Value::Object(m) = &mut v {
        let mut with_schema = serde_json::Map::new();
        with_schema.insert("schema".into(), json!(SCHEMA_VERSION));
        with_schema.append(m);
        v = Value::Object(with_schema);
    }
    let text = serde_json::to_string_pretty(&v).expect("reports serialize");
    std::fs::write(path, text + "\n").map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn cmd_check(arg: &str, laws: &[String], all: bool, json_path: Option<&Path>) -> Outcome {
    let s = resolve(arg)?;
    let entries = check::entries(&s)?;
    let mut report = LawReport::new();
    if laws.is_empty() {
        for e in entries.into_iter().filter(|e| all || e.default) {
            report.push(e.check);
        }
    } else {
        let mut entries: Vec<Option<LawCheck>> = entries.into_iter().map(|e| Some(e.check)).collect();
        for want in laws {
            let pos = entries.iter().position(|c| c.as_ref().is_some_and(|c| c.law.eq_ignore_ascii_case(want)));
            match pos.and_then(|i| entries[i].take()) {
                Some(c) => report.push(c),
                None => {
                    let known: Vec<&str> = entries.iter().flatten().map(|c| c.law.as_str()).collect();
                    return Err(CliError::Usage(format!(
                        "no law `{want}` for a {} (available: {})",
                        s.kind(),
                        known.join(", ")
                    )));
                }
            }
        }
    }
    println!("{arg} ({})", s.kind());
    print_checks(&report.checks);
    let failed = report.failures().count();
    println!("{} of {} pass", report.checks.len() - failed, report.checks.len());
    write_json(json_path, json!({ "subject": arg, "kind": s.kind(), "checks": report.checks }))?;
    Ok(failed == 0)
}

fn weights(arg: &str) -> Result<BiQuantale, CliError> {
    Ok(resolve(arg)?.to_biquantale()?)
}

/// Parses `{a: 1, b: 1}` (braces optional). A bare element gets the top weight.
fn parse_function(l: &LiftedAlgebra, src: &str) -> Result<WeightedFunction, CliError> {
    let body = src.trim();
    let body = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')).unwrap_or(body);
    let top = l.weights.lattice.name(l.weights.lattice.top()).to_string();
    let mut pairs = Vec::new();
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.rsplit_once(':') {
            Some((x, a)) => pairs.push((x.trim().to_string(), a.trim().to_string())),
            None => pairs.push((item.to_string(), top.clone())),
        }
    }
    let refs: Vec<(&str, &str)> = pairs.iter().map(|(x, a)| (x.as_str(), a.as_str())).collect();
    Ok(WeightedFunction::from_pairs(&l.base.carrier, &l.weights.lattice, &refs)?)
}

fn lifted(structure: &Structure, weights_arg: &str) -> Result<LiftedAlgebra, CliError> {
    let (x, _) = structure.to_bimagma()?;
    Ok(LiftedAlgebra::new(x, weights(weights_arg)?))
}

fn cmd_convolve(arg: &str, f: &str, g: &str, weights_arg: &str, rel: Rel) -> Outcome {
    let l = lifted(&resolve(arg)?, weights_arg)?;
    let (f, g) = (parse_function(&l, f)?, parse_function(&l, g)?);
    let which = match rel {
        Rel::Seq => Which::Seq,
        Rel::Par => Which::Par,
    };
    println!("{}", l.display(&l.convolve(which, &f, &g)?));
    Ok(true)
}

fn cmd_star(arg: &str, f: &str, weights_arg: &str, iterate: bool) -> Outcome {
    let s = resolve(arg)?;
    let (x, grading) = s.to_bimagma()?;
    let l = LiftedAlgebra::new(x, weights(weights_arg)?);
    let f = parse_function(&l, f)?;
    let m = l.base.retract(Which::Seq);
    let q = l.weights.seq_retract();
    let star = if iterate {
        iterative_star(&f, &m, &q)?
    } else {
        let grading = grading.ok_or_else(|| CliError::Usage(format!("{arg} has no grading; try --iterate")))?;
        star_graded(&f, &m, &grading, &KleeneAlgebraTable::from_quantale(&q)?)?
    };
    println!("{}", l.display(&star));
    Ok(true)
}

fn cmd_lift(x_arg: &str, q_arg: &str, suite: LiftSuite, json_path: Option<&Path>) -> Outcome {
    let l = lifted(&resolve(x_arg)?, q_arg)?;
    println!("{x_arg} with weights {q_arg}");
    let (ok, records) = match suite {
        LiftSuite::Interchange | LiftSuite::Full => {
            let laws: Vec<LiftedLaw> = match suite {
                LiftSuite::Interchange => (1..=7).map(LiftedLaw::Interchange).collect(),
                _ => LiftedLaw::full_suite(),
            };
            let results = check_lifted_suite(&l, &laws, Budget::default())?;
            let checks: Vec<LawCheck> = results
                .iter()
                .map(|r| LawCheck { note: Some(format!("{} over {} functions", r.strategy, r.domain_size)), ..r.check.clone() })
                .collect();
            print_checks(&checks);
            (results.iter().all(|r| r.check.holds), serde_json::to_value(&results))
        }
        LiftSuite::Correspondence => {
            let reports = correspondence_suite(&l.base, &l.weights)?;
            for r in &reports {
                println!("{r}");
            }
            let alarms = reports.iter().filter(|r| r.verdict == Verdict::Alarm).count();
            println!("{alarms} alarms");
            (alarms == 0, serde_json::to_value(&reports))
        }
    };
    let records = records.expect("reports serialize");
    write_json(json_path, json!({ "structure": x_arg, "weights": q_arg, "results": records }))?;
    Ok(ok)
}

fn cmd_pomset(t1: &str, op: Option<&str>, t2: Option<&str>) -> Outcome {
    match pomset::run(t1, op, t2)? {
        pomset::Answer::Term(t) => {
            println!("{t}");
            Ok(true)
        }
        pomset::Answer::Bool(b) => {
            println!("{b}");
            Ok(b)
        }
    }
}

fn cmd_search(scope: &str, budget: usize, json_path: Option<&Path>) -> Outcome {
    let scopes = if scope == "all" { Scope::ALL.to_vec() } else { vec![scope.parse::<Scope>()?] };
    let mut ok = true;
    let mut all = Vec::new();
    for s in scopes {
        let ws = search_counterexamples(s, budget)?;
        println!("scope {s}: {} witnesses", ws.len());
        for w in &ws {
            println!("{w}");
        }
        ok &= !ws.is_empty();
        all.extend(ws);
    }
    write_json(json_path, json!({ "budget": budget, "witnesses": all }))?;
    Ok(ok)
}

fn prefixed(prefix: &str, r: LawReport) -> Vec<LawCheck> {
    r.checks.into_iter().map(|c| LawCheck { law: format!("{prefix}{}", c.law), ..c }).collect()
}

fn eta_checks(m: &RelMagma, prefix: &str) -> Result<Vec<LawCheck>, CliError> {
    let mut out = prefixed(prefix, duality::verify_eta(m)?);
    let id = RelMorphism::identity(m);
    out.push(LawCheck { law: format!("{prefix}eta-square"), ..duality::check_eta_square(&id)? });
    Ok(out)
}

fn cmd_duality(arg: Option<&str>, suite: DualitySuite, max: usize, json_path: Option<&Path>) -> Outcome {
    match arg {
        Some(arg) => duality_of(arg, json_path),
        None => duality_sweeps(suite, max, json_path),
    }
}

fn duality_of(arg: &str, json_path: Option<&Path>) -> Outcome {
    let s = resolve(arg)?;
    let checks = match &s {
        Structure::Quantale(q) => duality::verify_sigma(q)?.checks,
        Structure::BiQuantale(q) => {
            let mut v = prefixed("seq:", duality::verify_sigma(&q.seq_retract())?);
            v.extend(prefixed("par:", duality::verify_sigma(&q.par_retract())?));
            v
        }
        Structure::RelMagma { magma, .. } => eta_checks(magma, "")?,
        Structure::PartialMonoid(pm) => eta_checks(&partialmon::to_relational(pm), "")?,
        Structure::PreorderedPartialMonoid(pm) => eta_checks(&partialmon::to_relational_preordered(pm), "")?,
        Structure::RelBiMagma { .. } | Structure::Universe { .. } => {
            let (b, _) = s.to_bimagma()?;
            let mut v = eta_checks(&b.retract(Which::Seq), "seq:")?;
            v.extend(eta_checks(&b.retract(Which::Par), "par:")?);
            v
        }
        other => return Err(CliError::Usage(format!("no duality checks for a {}", other.kind()))),
    };
    let report = LawReport { checks };
    println!("{arg} ({})", s.kind());
    print_checks(&report.checks);
    write_json(json_path, json!({ "subject": arg, "kind": s.kind(), "checks": report.checks }))?;
    Ok(report.all_hold())
}

fn duality_sweeps(suite: DualitySuite, max: usize, json_path: Option<&Path>) -> Outcome {
    let run = |s: DualitySuite| suite == DualitySuite::All || suite == s;
    let mut records = serde_json::Map::new();
    let mut ok = true;
    let mut record = |name: &str, sweep: duality::DualitySweep| {
        println!("{name:<11} {} checked, {} failures", sweep.checked, sweep.failures.len());
        for f in &sweep.failures {
            println!("  {f}");
        }
        ok &= sweep.all_hold();
        records.insert(name.to_string(), json!(sweep));
    };
    if run(DualitySuite::Sigma) {
        record("sigma", duality::sweep_sigma(max)?);
    }
    if run(DualitySuite::Eta) {
        record("eta", duality::sweep_eta(max)?);
    }
    if run(DualitySuite::Naturality) {
        record("naturality", duality::sweep_naturality(max)?);
    }
    write_json(json_path, json!({ "max": max, "sweeps": records }))?;
    Ok(ok)
}
