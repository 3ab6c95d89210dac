use super::*;

#[test]
fn bundled_corpus_loads() {
    let c = Corpus::bundled();
    let names: Vec<&str> = c.names().collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for n in [
        "unknot",
        "core",
        "fig4_left",
        "fig4_right",
        "fig5_left",
        "fig5_right",
        "fig11_left",
        "fig13",
        "fig14",
        "trefoil",
    ] {
        assert!(c.get(n).is_some(), "{n}");
    }
    for e in &c.entries {
        assert!(e.diagram.is_valid(), "{}", e.name);
        assert_eq!(e.diagram.meta.name.as_deref(), Some(e.name.as_str()));
    }
    assert!(c.relations.iter().any(|r| r.name == "fig5" && r.kind == RelationKind::EqualBreadth));
}

#[test]
fn bundled_expectations() {
    let report = verify_corpus(&Corpus::bundled(), LinkAssertions::default(), 4).unwrap();
    for e in &report.entries {
        assert!(e.report.passed(), "{}: {:?}", e.name, e.report.failures().collect::<Vec<_>>());
    }
    assert!(report.relations.iter().all(|r| r.ok), "{:?}", report.relations);
    // The stated value for fig14 has exponents that disagree mod 4, which no
    // diagram produces; those two expectations are the only misses.
    let misses: Vec<(&str, Field)> = report
        .entries
        .iter()
        .flat_map(|e| e.expectations.iter().filter(|x| !x.ok).map(move |x| (e.name.as_str(), x.field)))
        .collect();
    assert_eq!(misses, vec![("fig14", Field::Bracket), ("fig14", Field::Breadth)]);
}

#[test]
fn report_order_does_not_depend_on_threads() {
    let c = Corpus::bundled();
    let one = serde_json::to_string(&verify_corpus(&c, LinkAssertions::default(), 1).unwrap()).unwrap();
    let many = serde_json::to_string(&verify_corpus(&c, LinkAssertions::default(), 7).unwrap()).unwrap();
    assert_eq!(one, many);
}

#[test]
fn corrupted_value_is_reported() {
    let text = "[entry t]\nrecipe = braid 2: s1\nbasis = derived\nbracket = -A^3\ncrossings = 1\n";
    let c = Corpus::parse(text, None).unwrap();
    let r = verify_corpus(&c, LinkAssertions::default(), 1).unwrap();
    assert!(!r.passed());
    let e = &r.entries[0].expectations;
    assert!(!e[0].ok && e[0].found == "-A^-3");
    assert!(e[1].ok);
}

#[test]
fn values_are_normalised() {
    let text = "[entry t]\nrecipe = braid 2: s1 | mirror\nbasis = published\nbracket = -A^3\nsimple = 0 @derived\n";
    let c = Corpus::parse(text, None).unwrap();
    let e = &c.entries[0].expected;
    assert_eq!(e[0], Expectation { field: Field::Bracket, value: "-A^3".into(), basis: Basis::Published });
    assert_eq!(e[1].basis, Basis::Derived);
    assert!(verify_corpus(&c, LinkAssertions::default(), 1).unwrap().passed());
}

#[test]
fn file_entries_resolve_against_the_corpus_directory() {
    let dir = std::env::temp_dir().join(format!("askein-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let d = Recipe::parse("braid 3: s1 -s2").unwrap().build().unwrap();
    std::fs::write(dir.join("k.diagram"), d.to_text()).unwrap();
    let c = Corpus::parse("[entry k]\nfile = k.diagram\nbasis = published\nbracket = 0\n", Some(&dir)).unwrap();
    assert_eq!(c.entries[0].source, "k.diagram");
    assert_eq!(c.entries[0].diagram.crossing_count(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_name_the_line() {
    let cases = [
        ("bracket = 0\n", 1),
        ("[entry a]\nrecipe = braid 2: s1\nbracket = 0\n", 3),
        ("[entry a]\nrecipe = braid 2: q\n", 2),
        ("[entry a]\nrecipe = loops: 0\nbasis = guessed\n", 3),
        ("[entry a]\nrecipe = loops: 0\nbasis = derived\ncolour = red\n", 4),
        ("[entry a]\nrecipe = loops: 0\nbasis = derived\nz2 = 2\n", 4),
        ("[entry a]\nbasis = derived\n", 1),
        ("[entry a b]\n", 1),
        ("[block a]\n", 1),
        ("[relation r]\nkind = equal-bracket\nmembers = a b\n", 1),
        ("[relation r]\nkind = similar\n", 2),
    ];
    for (text, line) in cases {
        let e = Corpus::parse(text, None).unwrap_err();
        assert_eq!(e.line, line, "{text:?}: {e}");
    }
    let dup = "[entry a]\nrecipe = loops: 0\n[entry a]\nrecipe = loops: 1\n";
    assert!(Corpus::parse(dup, None).unwrap_err().msg.contains("duplicate"));
    let unknown = "[relation r]\nkind = both-zero\nmembers = x y\nbasis = derived\n";
    assert!(Corpus::parse(unknown, None).unwrap_err().msg.contains("unknown entry"));
}

#[test]
fn relation_kinds() {
    let a: LaurentPoly = "A^-6".parse().unwrap();
    let b: LaurentPoly = "-A^-3".parse().unwrap();
    let z = LaurentPoly::zero();
    assert!(RelationKind::EqualUpToFraming.holds(&[&a, &b]));
    assert!(!RelationKind::EqualBracket.holds(&[&a, &b]));
    assert!(RelationKind::EqualBreadth.holds(&[&a, &b]));
    assert!(RelationKind::BothZero.holds(&[&z, &z]));
    assert!(RelationKind::EqualUpToFraming.holds(&[&z, &z]));
    assert!(!RelationKind::EqualUpToFraming.holds(&[&z, &a]));
}
