mod common;

use common::{brute_state, FIGURE_EIGHT, KINK, TREFOIL};
use knotsum::diagram::{conway_sum, parse_pd};
use knotsum::generate::{rational_tangle, Generator};
use knotsum::states::{
    bridges, is_adequate, losses, resolve_state, state_graph, state_summary, stoimenow_quantity, tangle_reduction_loss,
    tangle_state_graph, BridgeType, Smoothing,
};
use knotsum::twist::{twist_number, twist_number_tangle, twist_partition_tangle};
use knotsum::{Error, LinkDiagram, TangleDiagram, TangleSign};
use proptest::prelude::*;

fn oracle_counts(d: &LinkDiagram, choice: Smoothing) -> (usize, usize, usize) {
    let (tuples, loops) = d.pd_tuples();
    brute_state(&tuples, loops.len(), choice == Smoothing::B)
}

fn library_counts(d: &LinkDiagram, choice: Smoothing) -> (usize, usize, usize) {
    let g = state_graph(d, choice);
    (g.vertex_count, g.loop_count(), g.reduced_edge_count())
}

#[test]
fn trefoil_states() {
    // the table trefoil is left-handed; its mirror has the 2-circle A-state
    let d = parse_pd(TREFOIL).unwrap();
    assert_eq!(resolve_state(&d, Smoothing::A).count, 3);
    assert_eq!(resolve_state(&d, Smoothing::B).count, 2);
    let right = d.mirror();
    assert_eq!(resolve_state(&right, Smoothing::A).count, 2);
    assert_eq!(resolve_state(&right, Smoothing::B).count, 3);
    let a = state_graph(&right, Smoothing::A);
    assert_eq!((a.vertex_count, a.edge_count(), a.reduced_edge_count()), (2, 3, 1));
    let b = state_graph(&right, Smoothing::B);
    assert_eq!((b.vertex_count, b.edge_count(), b.reduced_edge_count()), (3, 3, 3));
    for choice in [Smoothing::A, Smoothing::B] {
        assert_eq!(library_counts(&d, choice), oracle_counts(&d, choice));
        assert_eq!(library_counts(&right, choice), oracle_counts(&right, choice));
    }
}

#[test]
fn degenerate_states() {
    let unknot = parse_pd("Loop(1)").unwrap();
    assert_eq!(resolve_state(&unknot, Smoothing::A).count, 1);
    assert_eq!(resolve_state(&unknot, Smoothing::B).count, 1);
    assert_eq!(stoimenow_quantity(&unknot), Err(Error::NoCrossings));

    let kink = parse_pd(KINK).unwrap();
    let mut counts = [
        resolve_state(&kink, Smoothing::A).count,
        resolve_state(&kink, Smoothing::B).count,
    ];
    counts.sort_unstable();
    assert_eq!(counts, [1, 2]);
    let loops = state_graph(&kink, Smoothing::A).loop_count() + state_graph(&kink, Smoothing::B).loop_count();
    assert_eq!(loops, 1);
    assert!(!is_adequate(&kink));
    let q = stoimenow_quantity(&kink).unwrap();
    assert!(!q.adequate);
}

#[test]
fn stoimenow_values() {
    let q = stoimenow_quantity(&parse_pd(TREFOIL).unwrap()).unwrap();
    assert_eq!((q.value, q.adequate), (1, true));
    let q = stoimenow_quantity(&parse_pd(FIGURE_EIGHT).unwrap()).unwrap();
    assert_eq!((q.value, q.adequate), (2, true));
}

#[test]
fn bridge_examples() {
    let v2 = TangleDiagram::vertical_twist(2);
    let a = bridges(&v2, Smoothing::A).unwrap();
    let b = bridges(&v2, Smoothing::B).unwrap();
    assert_eq!(a.len() + b.len(), 1);
    let only = a.iter().chain(&b).next().unwrap();
    assert_eq!(only.kind, BridgeType::II);

    let h = TangleDiagram::horizontal_trivial();
    assert!(bridges(&h, Smoothing::A).unwrap().is_empty());
    assert!(bridges(&h, Smoothing::B).unwrap().is_empty());

    for a in [[2, 2], [3, 2], [2, 3], [-2, -2], [2, 1]] {
        let t = rational_tangle(&a);
        let tw = twist_number_tangle(&t);
        let n = bridges(&t, Smoothing::A).unwrap().len() + bridges(&t, Smoothing::B).unwrap().len();
        assert!(2 * n <= tw + 4, "{a:?}: {n} bridges, tw {tw}");
    }

    let mixed = rational_tangle(&[2, 3]).sum(&rational_tangle(&[-2, -3]));
    assert_eq!(bridges(&mixed, Smoothing::A), Err(Error::NotAlternating));
}

#[test]
fn tangle_graph_exterior() {
    let t = rational_tangle(&[2, 3]);
    for choice in [Smoothing::A, Smoothing::B] {
        let g = tangle_state_graph(&t, choice);
        assert_ne!(g.exterior[0], g.exterior[1]);
        for v in g.corner_vertex {
            assert!(g.exterior.contains(&v));
        }
        assert_eq!(g.graph.edge_count(), t.crossing_count());
    }
}

#[test]
fn loss_examples() {
    let pair = vec![TangleDiagram::vertical_twist(2), TangleDiagram::vertical_twist(3)];
    let d = conway_sum(&pair).unwrap();
    assert_eq!(d.component_count(), 1);
    let l = losses(&d).unwrap();
    let tw = twist_number(&d) as i64;
    assert_eq!(l.ell_in, d.crossing_count() as i64 - tw);
    assert!(2 * l.ell_ext <= tw + 8);

    let t = rational_tangle(&[2, 1, 3]);
    let single = conway_sum(std::slice::from_ref(&t)).unwrap();
    let l = losses(&single).unwrap();
    assert_eq!(l.ell_ext, 0);

    assert_eq!(losses(&single.unmarked()).unwrap_err(), Error::MissingDecomposition);
}

#[test]
fn strongly_alternating_sums() {
    let mut g = Generator::new(7);
    for mixed in [false, true, false, true, false, true] {
        let inst = g.two_tangle_knot(4, 8, mixed).unwrap();
        let d = &inst.diagram;
        let s = state_summary(d);
        assert!(s.adequate(), "sums of strongly alternating tangles are adequate");
        let c = d.crossing_count();
        if mixed {
            assert_eq!(s.v_a + s.v_b, c);
        } else {
            assert!(d.is_alternating());
            assert_eq!(s.v_a + s.v_b, c + 2);
        }
        let l = losses(d).unwrap();
        let tw = twist_number(d);
        assert_eq!(l.ell_in + l.ell_ext, l.total_loss as i64);
        assert_eq!(l.ell_in, (c - tw) as i64);
        assert_eq!(l.ell_in_attributed as i64, l.ell_in);
        assert!(2 * l.ell_ext <= tw as i64 + 8);
        if !mixed {
            assert_eq!(l.ell_ext, 0);
        }
        for ti in 0..2 {
            for choice in [Smoothing::A, Smoothing::B] {
                assert!(l.type_two_count(ti, choice) <= 1);
            }
        }
    }
}

fn alternating(seed: u64) -> LinkDiagram {
    Generator::new(seed).prime_alternating(3, 16).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn counts_match_the_circle_oracle(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let d = match seed % 3 {
            0 => g.prime_alternating(3, 14).unwrap(),
            1 => g.rational_sum(3, 1, 5).unwrap().diagram,
            _ => {
                let d = g.prime_alternating(3, 10).unwrap();
                g.add_random_kink(&d)
            }
        };
        for choice in [Smoothing::A, Smoothing::B] {
            prop_assert_eq!(library_counts(&d, choice), oracle_counts(&d, choice));
            let g = state_graph(&d, choice);
            prop_assert_eq!(g.edge_count(), d.crossing_count());
        }
    }

    #[test]
    fn alternating_diagrams_are_adequate(seed in any::<u64>()) {
        let d = alternating(seed);
        let s = state_summary(&d);
        prop_assert!(s.adequate());
        prop_assert_eq!(s.v_a + s.v_b, s.c + 2);
        prop_assert!(s.e_a_reduced <= s.e_a && s.e_b_reduced <= s.e_b);
    }

    #[test]
    fn mirror_swaps_the_graphs(seed in any::<u64>()) {
        let d = alternating(seed);
        let m = d.mirror();
        for (x, y) in [(Smoothing::A, Smoothing::B), (Smoothing::B, Smoothing::A)] {
            let (gx, gy) = (state_graph(&d, x), state_graph(&m, y));
            prop_assert_eq!(gx.vertex_count, gy.vertex_count);
            prop_assert_eq!(gx.parallel_classes(), gy.parallel_classes());
        }
    }

    #[test]
    fn tangle_losses_follow_twist_regions(a in proptest::collection::vec(1i64..5, 1..5), neg in any::<bool>()) {
        let a: Vec<i64> = a.into_iter().map(|x| if neg { -x } else { x }).collect();
        let t = rational_tangle(&a);
        let regions = twist_partition_tangle(&t);
        let per_region: usize = regions.classes.iter().map(|c| c.len() - 1).sum();
        prop_assert_eq!(tangle_reduction_loss(&t), per_region);
        prop_assert_eq!(per_region, t.crossing_count() - regions.twist_number);
    }

    #[test]
    fn strongly_alternating_tangle_losses(seed in any::<u64>()) {
        let sign = if seed % 2 == 0 { TangleSign::Positive } else { TangleSign::Negative };
        let t = Generator::new(seed).strongly_alternating_tangle(3, 10, sign).unwrap();
        prop_assert_eq!(tangle_reduction_loss(&t), t.crossing_count() - twist_number_tangle(&t));
    }
}
