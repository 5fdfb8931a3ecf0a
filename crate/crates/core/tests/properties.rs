mod common;

use proptest::prelude::*;
use veering::lp::{rat, ratio, Rational};
use veering::qmatch::QSolution;
use veering::quad::QuadSlot;
use veering::{
    build_q_system, enumerate_taut_angle_structures, find_veering_colouring, formal_euler,
    is_generalised_angle_structure, layered_ptb, one_sided_degrees, orient, parse_tgl,
    strict_angle_structure, to_tgl, vertical_only_solution, AngleAssignment, Letter, MonodromyWord,
    Perm4, TauConvention, Triangulation,
};

use common::*;

fn perm() -> impl Strategy<Value = Perm4> {
    (0..24usize).prop_map(|i| Perm4::all().nth(i).unwrap())
}

fn word() -> impl Strategy<Value = MonodromyWord> {
    prop::collection::vec(any::<bool>(), 2..=9).prop_filter_map("needs both letters", |bits| {
        MonodromyWord::new(
            bits.into_iter()
                .map(|b| if b { Letter::R } else { Letter::L })
                .collect(),
        )
        .ok()
    })
}

fn small_fixture() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["m003", "m004", "s227", "s438", "v3128"])
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn relabelled(name: &str, perms: &[Perm4]) -> (Triangulation, Triangulation) {
    let tri = fixture(name);
    let perms: Vec<Perm4> = perms
        .iter()
        .cycle()
        .take(tri.tet_count())
        .copied()
        .collect();
    let moved = tri.relabel(&perms).unwrap();
    (tri, moved)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gluings_are_involutions(name in small_fixture(), perms in prop::collection::vec(perm(), 1..8)) {
        let (_, tri) = relabelled(name, &perms);
        for t in 0..tri.tet_count() {
            for f in 0..4u8 {
                let g = tri.gluing(t, f);
                let back = tri.gluing(g.tet, g.perm.apply(f));
                prop_assert_eq!(back.tet, t);
                prop_assert!(back.perm.compose(g.perm).is_identity());
            }
        }
    }

    #[test]
    fn edge_walks_close_and_count(name in small_fixture(), perms in prop::collection::vec(perm(), 1..8)) {
        let (_, tri) = relabelled(name, &perms);
        prop_assert_eq!(tri.edge_degrees().iter().sum::<usize>(), 6 * tri.tet_count());
        prop_assert_eq!(tri.face_count(), 2 * tri.tet_count());
        for class in tri.edge_classes() {
            let k = class.degree();
            for (i, c) in class.corners.iter().enumerate() {
                let next = class.corners[(i + 1) % k];
                let g = tri.gluing(c.tet, c.exit_face());
                prop_assert_eq!(next.tet, g.tet);
                prop_assert_eq!(next.entry_face(), g.perm.apply(c.exit_face()));
            }
        }
    }

    #[test]
    fn relabelling_preserves_invariants(name in small_fixture(), perms in prop::collection::vec(perm(), 1..8)) {
        let (tri, moved) = relabelled(name, &perms);
        prop_assert_eq!(sorted(tri.edge_degrees()), sorted(moved.edge_degrees()));
        let oriented = orient(&moved).unwrap();
        prop_assert!(oriented.triangulation.is_oriented());
        prop_assert_eq!(
            enumerate_taut_angle_structures(&tri).len(),
            enumerate_taut_angle_structures(&oriented.triangulation).len()
        );
        let text = to_tgl(&moved);
        prop_assert_eq!(parse_tgl(&text).unwrap(), moved);
    }

    #[test]
    fn even_relabelling_commutes_with_tau(p in perm(), slot in 0..3usize) {
        let slot = QuadSlot::from_index(slot);
        let conv = TauConvention::Standard;
        let moved = conv.step(slot).relabel(p);
        if p.is_odd() {
            prop_assert_eq!(moved, conv.flipped().step(slot.relabel(p)));
        } else {
            prop_assert_eq!(moved, conv.step(slot.relabel(p)));
        }
    }

    #[test]
    fn enumeration_matches_brute_force(name in prop::sample::select(vec!["m003", "m004", "degree1", "degree2"]),
                                       perms in prop::collection::vec(perm(), 1..4)) {
        let (_, moved) = relabelled(name, &perms);
        let tri = orient(&moved).unwrap().triangulation;
        let fast: Vec<Vec<QuadSlot>> = enumerate_taut_angle_structures(&tri)
            .iter()
            .map(|s| s.slots().to_vec())
            .collect();
        prop_assert_eq!(fast, brute_force_taut(&tri));
    }

    #[test]
    fn generalised_check_agrees_with_substitution(values in prop::collection::vec(-3i64..=3, 6)) {
        let tri = fixture("m004");
        let a = AngleAssignment::new(values.iter().map(|&v| ratio(v, 3)).collect());
        prop_assert_eq!(is_generalised_angle_structure(&tri, &a).unwrap(), satisfies_angle_equations(&tri, &a));
    }

    #[test]
    fn formal_euler_is_linear(xs in prop::collection::vec(0i64..5, 18), ys in prop::collection::vec(0i64..5, 18)) {
        let tri = fixture("s227");
        let alpha = known_row("s227").assignment();
        let x = QSolution { x: xs.iter().map(|&v| rat(v)).collect() };
        let y = QSolution { x: ys.iter().map(|&v| rat(v)).collect() };
        let sum = QSolution { x: x.x.iter().zip(&y.x).map(|(a, b)| a + b).collect() };
        let lhs = formal_euler(&alpha, &sum).unwrap();
        let rhs: Rational = formal_euler(&alpha, &x).unwrap() + formal_euler(&alpha, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(tri.quad_count(), 18);
    }

    #[test]
    fn q_columns_balance(name in small_fixture(), perms in prop::collection::vec(perm(), 1..8)) {
        let (_, moved) = relabelled(name, &perms);
        let tri = orient(&moved).unwrap().triangulation;
        let q = build_q_system(&tri);
        prop_assert!(columns_balance(&q));
        prop_assert!(q.matrix.iter().flatten().all(|v| v.abs() <= 2));
        prop_assert_eq!(q.rank(), bareiss_rank(&q.matrix));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bundles_are_veering_and_strict(w in word()) {
        let (tri, taut) = layered_ptb(&w);
        prop_assert_eq!(tri.tet_count(), w.len());
        prop_assert!(tri.edge_degrees().iter().all(|&d| d >= 4));
        let col = find_veering_colouring(&tri, &taut, TauConvention::Standard).unwrap();
        prop_assert!(col.is_some());
        for e in 0..tri.edge_count() {
            let (a, b) = one_sided_degrees(&tri, &taut, e).unwrap();
            prop_assert!(a >= 1 && b >= 1);
        }
        prop_assert!(vertical_only_solution(&tri, &taut).unwrap().is_none());
        let w = strict_angle_structure(&tri).unwrap();
        prop_assert!(satisfies_angle_equations(&tri, &w.assignment));
        prop_assert!(strictly_between_zero_and_one(&w.assignment));
    }

    #[test]
    fn rotated_words_give_the_same_verdicts(w in word(), k in 0usize..9) {
        let (a, ta) = layered_ptb(&w);
        let (b, tb) = layered_ptb(&w.rotated(k));
        prop_assert_eq!(sorted(a.edge_degrees()), sorted(b.edge_degrees()));
        prop_assert_eq!(
            enumerate_taut_angle_structures(&a).len(),
            enumerate_taut_angle_structures(&b).len()
        );
        let va = find_veering_colouring(&a, &ta, TauConvention::Standard).unwrap().is_some();
        let vb = find_veering_colouring(&b, &tb, TauConvention::Standard).unwrap().is_some();
        prop_assert_eq!(va, vb);
    }

    #[test]
    fn colour_convention_only_swaps_colours(w in word()) {
        let (tri, _) = layered_ptb(&w);
        for s in enumerate_taut_angle_structures(&tri) {
            let a = find_veering_colouring(&tri, &s, TauConvention::Standard).unwrap();
            let b = find_veering_colouring(&tri, &s, TauConvention::Reversed).unwrap();
            prop_assert_eq!(a.is_some(), b.is_some());
            if let (Some(a), Some(b)) = (a, b) {
                let swapped: Vec<_> = a.colours.iter().map(|c| c.swapped()).collect();
                prop_assert_eq!(swapped, b.colours);
            }
        }
    }
}

#[test]
fn colour_convention_over_the_census() {
    for (name, text) in census_entries().iter().step_by(3) {
        let tri = orient(&parse_tgl(text).unwrap()).unwrap().triangulation;
        for s in enumerate_taut_angle_structures(&tri) {
            let a = find_veering_colouring(&tri, &s, TauConvention::Standard).unwrap();
            let b = find_veering_colouring(&tri, &s, TauConvention::Reversed).unwrap();
            assert_eq!(a.is_some(), b.is_some(), "{name}");
        }
    }
}

#[test]
fn strict_implies_degree_at_least_three() {
    for (name, text) in census_entries().iter().step_by(40) {
        let tri = orient(&parse_tgl(text).unwrap()).unwrap().triangulation;
        if strict_angle_structure(&tri).is_some() {
            assert!(tri.edge_degrees().iter().all(|&d| d >= 3), "{name}");
        }
    }
}
