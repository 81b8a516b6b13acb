use glr::drawing::{Edge, GridDrawing, Point};
use glr::layout::{layout, stretch_to_straightline, Algo, LayoutKind, Variant};
use glr::path::{path_invariant_check, select_path, PathParams};
use glr::tree::{generate, parse_tree, OrderedTree, TreeFamily};
use glr::validate::{check_planar, check_planar_brute, check_width_recurrence, validate, Condition};
use glr::experiments::required_conditions;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn random_tree() -> impl Strategy<Value = OrderedTree> {
    (1usize..150, 1usize..9, any::<u64>())
        .prop_map(|(n, max_arity, seed)| generate(&TreeFamily::Random { n, max_arity, seed }).unwrap())
}

fn kinds() -> Vec<LayoutKind> {
    [
        (Algo::Quadratic, Variant::Default),
        (Algo::OneBend, Variant::Default),
        (Algo::NonUpward, Variant::I),
        (Algo::NonUpward, Variant::IIl),
        (Algo::NonUpward, Variant::IIr),
        (Algo::Upward, Variant::I),
        (Algo::Upward, Variant::IIIl),
        (Algo::Upward, Variant::IIIr),
    ]
    .into_iter()
    .map(|(a, v)| LayoutKind::new(a, v).unwrap())
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(t in random_tree()) {
        let s = t.serialize();
        prop_assert_eq!(parse_tree(&s).unwrap(), t);
    }

    #[test]
    fn selected_path_keeps_the_invariant(t in random_tree(), p in 0.3f64..0.9) {
        let params = PathParams::new(p, 0.0004).unwrap();
        let path = select_path(&t, &params).unwrap();
        prop_assert!(path_invariant_check(&t, &path.nodes, &params).unwrap());
        prop_assert!(path.slack >= -1e-9);
    }

    #[test]
    fn every_engine_meets_its_conditions(t in random_tree()) {
        let params = PathParams::default();
        for kind in kinds() {
            let d = layout(&t, kind, &params).unwrap();
            let r = validate(&t, &d, &required_conditions(kind)).unwrap();
            prop_assert!(r.all_passed(), "{:?}\n{}", kind, r);
            if kind.algo != Algo::Quadratic {
                prop_assert!(check_width_recurrence(&t, &d).unwrap().passed());
            }
            let json = d.to_json();
            prop_assert_eq!(GridDrawing::from_json(&json).unwrap(), d);
        }
    }

    #[test]
    fn stretched_one_bend_is_ideal(t in (1usize..60, 2usize..6, any::<u64>())
        .prop_map(|(n, a, s)| generate(&TreeFamily::Random { n, max_arity: a, seed: s }).unwrap()))
    {
        let kind = LayoutKind::new(Algo::OneBend, Variant::Default).unwrap();
        let d = layout(&t, kind, &PathParams::default()).unwrap();
        let s = stretch_to_straightline(&d).unwrap();
        prop_assert_eq!(s.bend_count(), 0);
        prop_assert_eq!(s.bbox().width(), d.bbox().width());
        let r = validate(&t, &s, &[Condition::Planar, Condition::Order, Condition::Upward, Condition::P6]).unwrap();
        prop_assert!(r.all_passed(), "{}", r);
    }

    /// Random straight-line and one-bend drawings of random trees, mostly
    /// non-planar, on a small grid so that touching cases are common.
    #[test]
    fn sweep_agrees_with_all_pairs(
        t in (2usize..60, 1usize..5, any::<u64>())
            .prop_map(|(n, a, s)| generate(&TreeFamily::Random { n, max_arity: a, seed: s }).unwrap()),
        coords in prop::collection::vec((-6i64..6, -6i64..6, any::<bool>(), -6i64..6, -6i64..6), 60),
    ) {
        let n = t.len();
        let positions: Vec<Point> = (0..n).map(|v| Point::new(coords[v].0, coords[v].1)).collect();
        let edges: Vec<Edge> = (1..n)
            .map(|v| {
                let c = coords[v];
                Edge { from: t.parent(v).unwrap(), to: v, bend: c.2.then(|| Point::new(c.3, c.4)) }
            })
            .collect();
        let d = GridDrawing { positions, edges, spines: BTreeMap::new(), tree: None };
        prop_assert_eq!(
            check_planar(&t, &d).unwrap().passed(),
            check_planar_brute(&t, &d).unwrap().passed()
        );
    }
}

#[test]
fn sweep_agrees_on_engine_output_with_perturbations() {
    let params = PathParams::default();
    for seed in 0..40u64 {
        let t = generate(&TreeFamily::Random { n: 90, max_arity: 4, seed }).unwrap();
        for kind in kinds() {
            let mut d = layout(&t, kind, &params).unwrap();
            assert!(check_planar(&t, &d).unwrap().passed());
            assert!(check_planar_brute(&t, &d).unwrap().passed());
            // nudge one node sideways; both tests must still agree
            let v = (seed as usize * 7) % t.len();
            d.positions[v].x += if seed % 2 == 0 { 1 } else { -2 };
            assert_eq!(
                check_planar(&t, &d).unwrap().passed(),
                check_planar_brute(&t, &d).unwrap().passed(),
                "{kind:?} seed {seed}"
            );
        }
    }
}
