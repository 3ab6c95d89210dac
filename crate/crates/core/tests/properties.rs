use annular_skein::analysis;
use annular_skein::corpus::Corpus;
use annular_skein::diagram::{AnnularDiagram, BraidWord};
use annular_skein::generate::Generator;
use annular_skein::recipe::Recipe;
use annular_skein::skein::bracket;
use annular_skein::theorems::{verify_all, LinkAssertions};
use annular_skein::LaurentPoly;
use proptest::prelude::*;

fn reversed(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(e, c)| (-e, c.clone())))
}

/// A random connected closure, with the punctures moved when `moved`.
fn diagram(seed: u64, strands: usize, len: usize, moved: bool) -> AnnularDiagram {
    let mut g = Generator::new(seed);
    let w = g.connected_braid_word(strands, len.max(strands - 1), false);
    let d = AnnularDiagram::from_braid_closure(&w);
    if moved {
        g.reembed(&d).unwrap()
    } else {
        d
    }
}

fn letters(strands: usize) -> impl Strategy<Value = Vec<i32>> {
    let g = (strands as i32 - 1).max(1);
    prop::collection::vec((1..=g, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g }), 0..9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exponents_agree_mod_4(seed in any::<u64>(), strands in 2usize..6, len in 1usize..10, moved in any::<bool>()) {
        let b = bracket(&diagram(seed, strands, len, moved)).unwrap();
        let exps: Vec<i64> = b.terms().map(|(e, _)| e).collect();
        prop_assert!(exps.iter().all(|e| (e - exps[0]).rem_euclid(4) == 0), "{}", b);
        prop_assert_eq!(b.breadth() % 4, 0);
    }

    #[test]
    fn mirror_inverts_the_variable(seed in any::<u64>(), strands in 2usize..6, len in 1usize..10, moved in any::<bool>()) {
        let d = diagram(seed, strands, len, moved);
        prop_assert_eq!(bracket(&d.mirror()).unwrap(), reversed(&bracket(&d).unwrap()));
    }

    #[test]
    fn recipes_round_trip_through_files(strands in 2usize..5, w in letters(4)) {
        let w: Vec<i32> = w.into_iter().filter(|g| g.unsigned_abs() < strands as u32).collect();
        let text = format!(
            "braid {strands}: {}",
            w.iter().map(|g| if *g < 0 { format!("-s{}", -g) } else { format!("s{g}") }).collect::<Vec<_>>().join(" ")
        );
        let d = Recipe::parse(&text).unwrap().build().unwrap();
        prop_assert_eq!(&d, &AnnularDiagram::from_braid_closure(&BraidWord::new(strands, w).unwrap()));
        let back = AnnularDiagram::parse(&d.to_text()).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(bracket(&back).unwrap(), bracket(&d).unwrap());
    }

    #[test]
    fn checks_pass_on_alternating_closures(seed in any::<u64>(), strands in 2usize..6, len in 1usize..10, moved in any::<bool>()) {
        let mut g = Generator::new(seed);
        let w = g.connected_braid_word(strands, len.max(strands - 1), true);
        let mut d = AnnularDiagram::from_braid_closure(&w);
        if moved {
            d = g.reembed(&d).unwrap();
        }
        let r = verify_all(&d, LinkAssertions::default(), 1).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn corpus_diagrams_survive_the_file_format() {
    for e in &Corpus::bundled().entries {
        let back = AnnularDiagram::parse(&e.diagram.to_text()).unwrap();
        assert_eq!(back, e.diagram, "{}", e.name);
        assert_eq!(analysis::profile(&back).unwrap(), analysis::profile(&e.diagram).unwrap());
    }
}

#[test]
fn corpus_pairs_are_what_their_names_say() {
    let c = Corpus::bundled();
    let profile = |n: &str| analysis::profile(&c.get(n).unwrap().diagram).unwrap();
    for n in ["fig4_left", "fig4_right", "fig5_left", "fig5_right"] {
        assert!(profile(n).alternating, "{n}");
    }
    assert!(profile("fig4_left").crossings < profile("fig4_right").crossings);
    assert_ne!(profile("fig5_left").crossings, profile("fig5_right").crossings);
    assert_eq!(profile("fig5_left").simple, Some(true));
    assert_eq!(profile("fig5_right").simple, Some(false));
    assert_eq!(profile("fig5_right").quasi_simple, Some(true));
    assert!(!profile("fig13").alternating && !profile("fig14").alternating);
}
