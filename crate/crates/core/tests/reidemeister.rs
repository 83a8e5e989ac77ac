use std::collections::BTreeMap;

use proptest::prelude::*;
use ptangle_core::colorings::fox_solution_space;
use ptangle_core::moves::*;
use ptangle_core::{determinant, link_determinant, ArcLabel, Coloring, Diagram, MoveError};

fn count(d: &Diagram, n: u32) -> num_bigint::BigUint {
    fox_solution_space(d, n, &BTreeMap::new()).unwrap().count()
}

fn braid() -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=4).prop_flat_map(|s| {
        let gen = (1..s as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        (Just(s), prop::collection::vec(gen, 1..=8))
    })
}

fn diagram(s: usize, word: &[i32], oriented: bool) -> Diagram {
    let d = Diagram::braid_closure(s, word).unwrap();
    if oriented {
        d
    } else {
        d.unoriented()
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn r2_moves_preserve_counts((s, word) in braid(), oriented in any::<bool>(), pick in 0usize..64) {
        let d = diagram(s, &word, oriented);
        let faces = d.faces();
        let pairs: Vec<(usize, ArcLabel, ArcLabel)> = faces
            .iter()
            .enumerate()
            .flat_map(|(i, f)| {
                f.sides.iter().flat_map(move |a| f.sides.iter().map(move |b| (i, a.label, b.label)))
            })
            .filter(|(_, a, b)| a != b)
            .collect();
        prop_assume!(!pairs.is_empty());
        let (fi, m, t) = pairs[pick % pairs.len()];
        let (after, rec) = apply_r2_over_in_face(&d, fi, m, t).unwrap();
        prop_assert_eq!(after.is_oriented(), d.is_oriented());
        for n in 2..=7 {
            prop_assert_eq!(count(&d, n), count(&after, n));
        }
        let (back, _) = undo_r2(&after, &rec).unwrap();
        prop_assert_eq!(back.normalized().to_pd(), d.normalized().to_pd());
    }

    #[test]
    fn r1_moves_preserve_counts((s, word) in braid(), oriented in any::<bool>(), pick in 0usize..64, shape in 0usize..4) {
        let d = diagram(s, &word, oriented);
        let labels: Vec<ArcLabel> = d.positions().into_keys().collect();
        let arc = labels[pick % labels.len()];
        let (after, _) = apply_r1_plus(&d, arc, shape).unwrap();
        for n in 2..=7 {
            prop_assert_eq!(count(&d, n), count(&after, n));
        }
        for x in r1_minus_sites(&after) {
            let (less, _) = apply_r1_minus(&after, x).unwrap();
            for n in 2..=7 {
                prop_assert_eq!(count(&less, n), count(&after, n));
            }
        }
    }

    #[test]
    fn r3_and_r2_minus_preserve_counts((s, word) in braid(), oriented in any::<bool>()) {
        let d = diagram(s, &word, oriented);
        for fi in r3_sites(&d) {
            let (after, _) = apply_r3(&d, fi).unwrap();
            prop_assert_eq!(after.len(), d.len());
            for n in 2..=7 {
                prop_assert_eq!(count(&d, n), count(&after, n));
            }
        }
        for (x, y) in r2_minus_sites(&d) {
            let (after, _) = apply_r2_minus(&d, x, y).unwrap();
            prop_assert_eq!(after.len() + 2, d.len());
            for n in 2..=7 {
                prop_assert_eq!(count(&d, n), count(&after, n));
            }
        }
    }

    #[test]
    fn transport_keeps_determinant((s, word) in braid(), a in 0usize..64, b in 0usize..64) {
        let d = diagram(s, &word, true);
        let labels: Vec<ArcLabel> = d.positions().into_keys().collect();
        let (src, dst) = (labels[a % labels.len()], labels[b % labels.len()]);
        prop_assume!(src != dst);
        let c = Coloring::constant(&d, ptangle_core::Palette::Fox(3), 1);
        match r2_transport(&d, &c, src, dst) {
            Ok(t) => {
                prop_assert!(t.diagram.co_facial(t.segment, dst).unwrap());
                prop_assert_eq!(link_determinant(&t.diagram), link_determinant(&d));
                if let Ok(det) = determinant(&d) {
                    prop_assert_eq!(determinant(&t.diagram).unwrap(), det);
                }
                prop_assert!(t.coloring.verify(&t.diagram).unwrap());
            }
            Err(MoveError::Disconnected(..)) => prop_assert!(d.components().count() > 1 || !d.circles().is_empty()),
            Err(e) => prop_assert!(false, "transport failed: {e}"),
        }
    }
}

#[test]
fn r3_on_braid_relation() {
    let d = Diagram::braid_closure(3, &[1, 2, 1, -2]).unwrap();
    let sites = r3_sites(&d);
    assert!(!sites.is_empty());
    for fi in sites {
        let (after, rec) = apply_r3(&d, fi).unwrap();
        assert_eq!(rec.kind, MoveKind::R3);
        assert!(after.is_oriented());
        for n in 2..=7 {
            assert_eq!(count(&d, n), count(&after, n));
        }
    }
}
