use convalg::format::{build, parse, preset, resolve, to_json, Document, Structure, FIXTURES, PRESETS};
use convalg::graphmodels::{build_type_bimagma, isomorphic, parse_term, TypeUniverse};
use convalg::langmodels::{build_word_bimagma, BoundedWordUniverse};
use convalg::partialmon::{presets, Encoding};
use convalg::relstruct::check_relational_interchange;
use convalg::weights;
use convalg::Error;

#[test]
fn every_fixture_parses() {
    for (name, src) in FIXTURES {
        let s = parse(src).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!s.kind().is_empty());
    }
}

#[test]
fn fixtures_match_their_builders() {
    let Structure::Universe { bimagma, .. } = resolve("words2").unwrap() else { panic!() };
    assert_eq!(bimagma, build_word_bimagma(&BoundedWordUniverse::new(&['a', 'b'], 2).unwrap()));
    let Structure::Universe { bimagma, .. } = resolve("posettypes3").unwrap() else { panic!() };
    assert_eq!(bimagma, build_type_bimagma(&TypeUniverse::new(3, &[], true).unwrap()));
    assert_eq!(resolve("boolean").unwrap().to_biquantale().unwrap(), weights::boolean());
    assert_eq!(resolve("minplus3.json").unwrap().to_biquantale().unwrap(), weights::min_plus(3).unwrap());
    let Structure::Pim { pim, encoding } = resolve("counterexample-s9").unwrap() else { panic!() };
    assert_eq!(pim, presets::counterexample_s9());
    assert_eq!(encoding, Encoding::Equality);
}

#[test]
fn generated_fixtures_are_golden() {
    let b = to_json(&Document::from_biquantale(&weights::boolean()));
    assert_eq!(b, convalg::format::fixture("boolean").unwrap());
    let m = to_json(&Document::from_biquantale(&weights::min_plus(3).unwrap()));
    assert_eq!(m, convalg::format::fixture("minplus3").unwrap());
    let s9 = to_json(&Document::from_pim(&presets::counterexample_s9(), Encoding::Equality));
    assert_eq!(s9, convalg::format::fixture("counterexample-s9").unwrap());
}

#[test]
fn round_trips() {
    let q = weights::boolean_quantale();
    let Structure::Quantale(back) = parse(&to_json(&Document::from_quantale(&q))).unwrap() else { panic!() };
    assert_eq!(back, q);

    let (words, grading) = resolve("words2").unwrap().to_bimagma().unwrap();
    let doc = Document::from_relbimagma(&words, &grading);
    let Structure::RelBiMagma { bimagma, grading: g2 } = parse(&to_json(&doc)).unwrap() else { panic!() };
    assert_eq!(bimagma, words);
    assert_eq!(g2.unwrap().0, grading.unwrap().0);

    let seq = words.retract(convalg::Which::Seq);
    let Structure::RelMagma { magma, grading } = build(&Document::from_relmagma(&seq, &None)).unwrap() else {
        panic!()
    };
    assert_eq!(magma, seq);
    assert!(grading.is_none());
}

#[test]
fn presets_resolve() {
    for name in PRESETS {
        assert!(preset(name).is_some());
        assert!(resolve(name).is_ok());
    }
    let Structure::PartialMonoid(pm) = resolve("interval3").unwrap() else { panic!() };
    assert_eq!(pm.len(), 6);
    let Structure::PartialMonoid(pm) = resolve("heaplet22").unwrap() else { panic!() };
    assert_eq!(pm.len(), 9);
    let (b, _) = resolve("counterexample-s9").unwrap().to_bimagma().unwrap();
    assert!(!check_relational_interchange(&b, 1).unwrap().holds);
}

#[test]
fn graphs_and_universes() {
    let g = parse(r#"{"schema": 1, "kind": "graph", "term": "a;b"}"#).unwrap();
    let Structure::Graph(g) = g else { panic!() };
    assert!(isomorphic(&g, &parse_term("a;b").unwrap()));
    let h = parse(r#"{"schema": 1, "kind": "graph", "vertices": ["a", "b"], "edges": [[0, 1]]}"#).unwrap();
    let Structure::Graph(h) = h else { panic!() };
    assert!(isomorphic(&g, &h));
    let u = parse(r#"{"schema": 1, "kind": "universe", "model": "graph-types", "max": 2}"#).unwrap();
    let (b, grading) = u.to_bimagma().unwrap();
    assert_eq!(b.len(), grading.unwrap().0.len());
}

#[test]
fn partial_monoid_files() {
    let src = r#"{
      "schema": 1, "kind": "partialmonoid",
      "carrier": ["e", "a"],
      "comp": [["e", "e", "e"], ["a", "e", "a"], ["a", "a", "e"]],
      "units": ["e"],
      "preorder": [["e", "a"]]
    }"#;
    assert!(matches!(parse(src).unwrap(), Structure::PreorderedPartialMonoid(_)));
    let plain = src.replace(",\n      \"preorder\": [[\"e\", \"a\"]]", "");
    assert_ne!(plain, src);
    assert!(matches!(parse(&plain).unwrap(), Structure::PartialMonoid(_)));
}

fn schema_error(src: &str) -> bool {
    matches!(parse(src), Err(Error::Schema(_)))
}

#[test]
fn malformed_files_are_rejected() {
    assert!(schema_error("{}"));
    assert!(schema_error("[]"));
    assert!(schema_error("not json"));
    assert!(schema_error(r#"{"schema": 2, "kind": "graph", "term": "a"}"#));
    assert!(schema_error(r#"{"kind": "graph", "term": "a"}"#));
    assert!(schema_error(r#"{"schema": 1, "kind": "teapot"}"#));
    assert!(schema_error(r#"{"schema": 1, "kind": "graph", "term": "a", "colour": "red"}"#));
    assert!(schema_error(r#"{"schema": 1, "kind": "graph"}"#));
    let unknown = r#"{"schema": 1, "kind": "relmagma", "carrier": ["e"], "relation": [["e", "e", "x"]]}"#;
    assert!(matches!(parse(unknown), Err(Error::UnknownElement(_))));
    let short = r#"{"schema": 1, "kind": "quantale", "carrier": ["0", "1"], "order": [["0", "1"]], "comp": [["0"]]}"#;
    assert!(schema_error(short));
    let not_lattice = r#"{"schema": 1, "kind": "quantale", "carrier": ["a", "b"], "comp": [["a", "a"], ["a", "a"]]}"#;
    assert!(matches!(parse(not_lattice), Err(Error::NotALattice(_))));
    assert!(schema_error(r#"{"schema": 1, "kind": "relmagma", "carrier": ["e"], "relation": [], "grading": {}}"#));
    assert!(resolve("no-such-structure").is_err());
    assert!(resolve("boolean").unwrap().to_bimagma().is_err());
    assert!(resolve("words2").unwrap().to_biquantale().is_err());
}
