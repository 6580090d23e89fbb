//! The solver on fixtures, its internal guarantees, and its options.

mod common;

use contractvc::exact::min_vertex_cover;
use contractvc::generators::random_connected_graph;
use contractvc::instance::verify_witness;
use contractvc::oracles::oracle_contraction_vc;
use contractvc::pipeline::{enumerate_annotated, preprocess_low_rank_cover, solve_connected, Preprocessed};
use contractvc::{solve, solve_with, Answer, Branch, CvcInstance, Graph, SolveOptions};
use proptest::prelude::*;

fn g(n: usize, e: &[(usize, usize)]) -> Graph {
    Graph::new(n, e).unwrap()
}

#[test]
fn documented_examples() {
    let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
    let two = g(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
    let v = solve(&CvcInstance::new(two, 2, 2));
    assert_eq!(v.answer, Answer::Yes);
    assert_eq!(v.witness.as_ref().map(|w| w.len()), Some(2));
    let p3 = g(3, &[(0, 1), (1, 2)]);
    assert_eq!(solve(&CvcInstance::new(p3, 1, 1)).answer, Answer::No);
    assert_eq!(solve(&CvcInstance::new(k3, 5, 0)).witness, Some(Default::default()));
    let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
    assert_eq!(solve_connected(&CvcInstance::new(c5.clone(), 2, 1)).stats.branch, Some(Branch::TwoDLeK));
    assert_eq!(solve(&CvcInstance::new(c5, 2, 2)).answer, Answer::No);
}

#[test]
fn degenerate_inputs() {
    for n in 0..=1 {
        let e = Graph::empty(n);
        assert_eq!(solve(&CvcInstance::new(e.clone(), 0, 0)).answer, Answer::Yes);
        assert_eq!(solve(&CvcInstance::new(e, 3, 1)).answer, Answer::No);
    }
}

#[test]
fn two_cover_swap_example() {
    let (graph, x) = common::cover_swap_example();
    assert_eq!(min_vertex_cover(&graph).size, 4);
    assert!(graph.is_vertex_cover(&x));
    let inst = CvcInstance::new(graph, 3, 2);
    let v = solve(&inst);
    assert_eq!(v.answer, Answer::Yes);
    assert!(verify_witness(&inst, v.witness.as_ref().unwrap()));
    assert!(verify_witness(&inst, &common::cover_swap_witness()));
}

#[test]
fn preprocessing_examples() {
    let k5: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    assert!(matches!(preprocess_low_rank_cover(&CvcInstance::new(g(5, &k5), 3, 2)), Preprocessed::Yes(_)));
    let c6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
    match preprocess_low_rank_cover(&CvcInstance::new(c6.clone(), 3, 2)) {
        Preprocessed::Cover(x) => assert_eq!(c6.rank_vertex_set(&x).unwrap(), 0),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn annotation_count_is_bounded_by_rank_of_cover() {
    for graph in common::connected_graphs(6) {
        let x = min_vertex_cover(&graph).cover;
        let rank_x = graph.rank_vertex_set(&x).unwrap();
        let inst = CvcInstance::new(graph.clone(), 1, 1);
        let count = enumerate_annotated(&inst, &x).len();
        assert!(count >= 1 && count <= 3usize.pow(rank_x as u32));
    }
}

/// The alternative reading of the annotation step loses solutions; the
/// default reading agrees with the oracle everywhere.
#[test]
fn literal_annotation_reading_is_incomplete() {
    let literal = SolveOptions { literal_annotation: true, ..SolveOptions::default() };
    let mut disagreements = 0;
    for graph in common::connected_graphs(6).step_by(7) {
        for k in 1..graph.rank() {
            for d in (k + 2) / 2..=k {
                let inst = CvcInstance::new(graph.clone(), k, d);
                let want = oracle_contraction_vc(&inst).unwrap().answer;
                assert_eq!(solve(&inst).answer, want);
                let got = solve_with(&inst, &literal).answer;
                assert!(got == want || want == Answer::Yes, "the literal reading never invents solutions");
                disagreements += usize::from(got != want);
            }
        }
    }
    assert!(disagreements > 0);
}

#[test]
fn every_branch_is_reached() {
    let mut seen = std::collections::BTreeSet::new();
    for graph in common::connected_graphs(5) {
        for k in 0..=graph.rank() {
            for d in 0..=k {
                seen.extend(solve(&CvcInstance::new(graph.clone(), k, d)).stats.branch);
            }
        }
    }
    let want = [Branch::Trivial, Branch::KEqRank, Branch::TwoDLeK, Branch::Pipeline];
    assert!(want.iter().all(|b| seen.contains(b)), "{seen:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parallel_fan_out_is_deterministic(n in 5usize..=12, p in 0.05f64..0.4, seed in any::<u64>(), k in 1usize..=6, d in 1usize..=6) {
        let graph = random_connected_graph(n, p, seed);
        let inst = CvcInstance::new(graph, k.max(d), d);
        let seq = solve(&inst);
        let par = solve_with(&inst, &SolveOptions { parallel: true, ..SolveOptions::default() });
        prop_assert_eq!(seq.answer, par.answer);
        prop_assert_eq!(seq.witness, par.witness);
    }

    #[test]
    fn yes_witnesses_verify(n in 2usize..=14, p in 0.05f64..0.5, seed in any::<u64>(), k in 0usize..=7, d in 0usize..=7) {
        let graph = random_connected_graph(n, p, seed);
        let inst = CvcInstance::new(graph, k, d);
        let v = solve(&inst);
        if v.answer == Answer::Yes {
            let w = v.witness.expect("witnesses are on by default");
            prop_assert!(w.len() <= k);
            prop_assert!(verify_witness(&inst, &w));
        }
    }

    #[test]
    fn no_witness_mode_gives_the_same_answer(n in 2usize..=10, p in 0.05f64..0.5, seed in any::<u64>(), k in 0usize..=6, d in 0usize..=6) {
        let graph = random_connected_graph(n, p, seed);
        let inst = CvcInstance::new(graph, k, d);
        let quiet = solve_with(&inst, &SolveOptions { witness: false, ..SolveOptions::default() });
        prop_assert_eq!(quiet.answer, solve(&inst).answer);
        prop_assert!(quiet.witness.is_none());
    }
}
