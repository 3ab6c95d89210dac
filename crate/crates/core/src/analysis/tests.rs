use super::*;
use crate::diagram::{BraidWord, Corner, KinkSign, R2Options, Side, Strand};
use crate::generate::Generator;

fn closure(m: usize, w: &[i32]) -> AnnularDiagram {
    AnnularDiagram::from_braid_closure(&BraidWord::new(m, w.to_vec()).unwrap())
}

fn trefoil() -> AnnularDiagram {
    AnnularDiagram::from_disk_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], None).unwrap()
}

const SIX: [i32; 6] = [1, -2, 3, 1, -2, 3];

#[test]
fn homology_class() {
    assert!(z2_class(&AnnularDiagram::from_free_loops(&[true])));
    assert!(!z2_class(&closure(2, &[1])));
    assert!(z2_class(&closure(3, &[1, -2, 2])));
}

#[test]
fn alternation() {
    assert!(is_alternating(&closure(2, &[1, 1])).unwrap());
    assert!(is_alternating(&closure(4, &SIX)).unwrap());
    assert!(!is_alternating(&closure(3, &[1, 2])).unwrap());
    let d = closure(4, &SIX);
    let topo = d.topology().unwrap();
    for face in topo.faces() {
        let edges: Vec<_> = face.boundary_edges(&d).collect();
        let r = d.insert_r2(edges[0], edges[1], R2Options { face: Some(face.corners[0]), second_over: false }).unwrap();
        assert!(!is_alternating(&r).unwrap());
    }
}

#[test]
fn crossing_classes() {
    let kinked = AnnularDiagram::from_free_loops(&[false])
        .insert_r1(Strand::FreeLoop(0), KinkSign::Positive, Side::Left)
        .unwrap();
    assert_eq!(classify_crossings(&kinked).unwrap().classes, vec![CrossingClass::Nugatory]);

    let one = classify_crossings(&closure(2, &[1])).unwrap();
    assert_eq!(one.classes, vec![CrossingClass::ExternalAdjacent]);
    assert!(!one.is_simple() && one.is_quasi_simple());

    let two = classify_crossings(&closure(2, &[1, 1])).unwrap();
    assert_eq!(two.count(CrossingClass::ExternalAdjacent), 2);
    assert!(!two.is_quasi_simple());

    let six = classify_crossings(&closure(4, &SIX)).unwrap();
    assert!(six.classes.iter().all(|&c| c == CrossingClass::Regular));
    assert!(six.is_simple());
    assert!(six.flagged.is_empty());
}

#[test]
fn kink_inside_an_annular_diagram_is_nugatory() {
    let d = closure(4, &SIX);
    let topo = d.topology().unwrap();
    let [inner, outer] = topo.external_faces();
    // pick an edge with no external face on either side
    let e = (0..d.edges().len())
        .find(|&e| topo.edge_sides(e).iter().all(|f| Some(*f) != inner && Some(*f) != outer))
        .unwrap();
    for side in [Side::Left, Side::Right] {
        let k = d.insert_r1(Strand::Edge(e), KinkSign::Negative, side).unwrap();
        let c = classify_crossings(&k).unwrap();
        assert_eq!(c.classes[6], CrossingClass::Nugatory);
        assert_eq!(c.count(CrossingClass::Nugatory), 1);
    }
}

#[test]
fn kink_lobes_next_to_the_punctures() {
    let d = closure(4, &SIX);
    let topo = d.topology().unwrap();
    let inner = topo.external_faces()[0].unwrap();
    let e = (0..d.edges().len()).find(|&e| topo.edge_sides(e).contains(&inner)).unwrap();
    let mut ties = 0;
    for side in [Side::Left, Side::Right] {
        let k = d.insert_r1(Strand::Edge(e), KinkSign::Positive, side).unwrap();
        let kt = k.topology().unwrap();
        let c = classify_crossings(&k).unwrap();
        // the two side corners of a kink lie in the face holding the lobe
        let lobe_in_inner =
            (0..4u8).filter(|&j| kt.face_of(Corner::new(6, j)) == kt.external_faces()[0].unwrap()).count() == 2;
        if lobe_in_inner {
            ties += 1;
            assert_eq!(c.classes[6], CrossingClass::ExternalAdjacent);
            assert_eq!(c.flagged, vec![(6, Ambiguity::Tie)]);
        } else {
            assert_eq!(c.classes[6], CrossingClass::Nugatory);
            assert!(c.flagged.is_empty());
        }
    }
    assert_eq!(ties, 1);
}

#[test]
fn ties_are_exactly_external_double_faces() {
    let mut g = Generator::new(25);
    for d in population(26, 150, false) {
        let k = g.r1(&d).unwrap();
        for x in [d, k] {
            let topo = x.topology().unwrap();
            let ext: Vec<usize> = topo.external_faces().iter().flatten().copied().collect();
            let c = classify_crossings(&x).unwrap();
            for i in 0..x.crossing_count() {
                let f: Vec<usize> = (0..4u8).map(|j| topo.face_of(Corner::new(i, j))).collect();
                let external_double = (0..2).any(|j| f[j] == f[j + 2] && ext.contains(&f[j]));
                let tie = c.flagged.contains(&(i, Ambiguity::Tie));
                if !is_in_disk(&x).unwrap() {
                    assert_eq!(tie, external_double, "{}", x.to_text());
                }
            }
        }
    }
}

#[test]
fn single_period_columns_are_flagged() {
    let c = classify_crossings(&closure(4, &[1, -2, 3])).unwrap();
    assert!(c.is_simple());
    assert_eq!(c.flagged.len(), 3);
    assert!(c.flagged.iter().all(|(_, a)| *a == Ambiguity::EssentialLoop));
}

#[test]
fn disconnected_is_not_classified() {
    assert!(matches!(classify_crossings(&closure(3, &[2, 2])), Err(AnalysisError::NotConnected)));
    assert!(matches!(classify_crossings(&AnnularDiagram::empty()), Err(AnalysisError::NotConnected)));
}

#[test]
fn constant_states() {
    assert_eq!(
        state_counts(&closure(2, &[1, 1])).unwrap(),
        StateCounts { s_plus: 0, p_plus: 2, s_minus: 2, p_minus: 0 }
    );
    let t = state_counts(&trefoil()).unwrap();
    assert_eq!(t.s_plus + t.s_minus, 5);
    let o = state_counts(&closure(2, &[1])).unwrap();
    assert_eq!(o.s_plus + o.s_minus, 1);
}

#[test]
fn adequacy() {
    assert_eq!(is_adequate(&trefoil()).unwrap(), (true, true));
    assert!(!is_adequate(&closure(2, &[1, 1])).unwrap().0);
    assert_eq!(is_adequate(&closure(4, &SIX)).unwrap(), (true, true));
}

#[test]
fn connectivity_and_disk() {
    let t = trefoil();
    assert!(is_connected(&t).unwrap() && is_in_disk(&t).unwrap());
    let two = closure(2, &[1, 1]);
    assert!(is_connected(&two).unwrap() && !is_in_disk(&two).unwrap());
    assert!(!is_connected(&closure(3, &[2, 2])).unwrap());
    assert!(is_connected(&AnnularDiagram::from_free_loops(&[true])).unwrap());
    assert!(!is_connected(&AnnularDiagram::from_free_loops(&[true, true])).unwrap());
    assert!(!is_connected(&AnnularDiagram::empty()).unwrap());
    assert!(is_in_disk(&AnnularDiagram::from_free_loops(&[false])).unwrap());
    assert!(!is_in_disk(&AnnularDiagram::from_free_loops(&[true])).unwrap());
}

#[test]
fn profile_consistency() {
    let p = profile(&closure(4, &SIX)).unwrap();
    assert!(p.alternating && p.connected && !p.in_disk && !p.z2_class);
    assert_eq!(p.simple, Some(true));
    assert_eq!(p.external_adjacent, Some(0));
    let p = profile(&closure(2, &[1, 1])).unwrap();
    assert_eq!(p.external_adjacent, Some(2));
    assert_eq!(p.quasi_simple, Some(false));
}

/// Random connected diagrams: braid closures with every generator present,
/// with the punctures moved to random faces half of the time.
fn population(seed: u64, count: usize, alternating: bool) -> Vec<AnnularDiagram> {
    let mut g = Generator::new(seed);
    (0..count)
        .map(|i| {
            let w = g.connected_braid_word(2 + i % 4, 2 + i % 9, alternating);
            let d = closure(w.strands, &w.letters);
            if i % 2 == 1 {
                g.reembed(&d).unwrap()
            } else {
                d
            }
        })
        .collect()
}

#[test]
fn constant_state_parities_agree() {
    for d in population(21, 120, false) {
        let p = profile(&d).unwrap();
        assert_eq!(p.p_plus % 2 == 1, p.z2_class);
        assert_eq!(p.p_minus % 2 == 1, p.z2_class);
    }
}

#[test]
fn alternating_annular_constant_states_split_two_cores() {
    for d in population(22, 120, true) {
        let p = profile(&d).unwrap();
        assert!(p.alternating);
        if p.connected && !p.z2_class && !p.in_disk {
            let mut pair = [p.p_plus, p.p_minus];
            pair.sort();
            assert_eq!(pair, [0, 2], "{}", d.to_text());
        }
    }
}

#[test]
fn alternating_constant_states_count_faces() {
    for d in population(23, 120, true) {
        let p = profile(&d).unwrap();
        if p.connected {
            assert_eq!(p.s_plus + p.p_plus + p.s_minus + p.p_minus, p.faces, "{}", d.to_text());
        }
    }
}

#[test]
fn simple_alternating_diagrams_are_adequate() {
    let mut seen = 0;
    for d in population(24, 200, true) {
        let p = profile(&d).unwrap();
        if p.simple == Some(true) && p.alternating && p.connected && !p.z2_class {
            seen += 1;
            assert!(p.adequate(), "{}", d.to_text());
        }
    }
    assert!(seen >= 20, "only {seen} simple diagrams");
}

#[test]
fn profile_serialises() {
    let json = serde_json::to_value(profile(&closure(2, &[1])).unwrap()).unwrap();
    assert_eq!(json["crossings"], 1);
    assert_eq!(json["external_adjacent"], 1);
    assert_eq!(json["simple"], false);
}
