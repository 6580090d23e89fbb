//! The oracles against each other and against the structural facts the
//! algorithm rests on.

mod common;

use contractvc::exact::{min_vertex_cover, vertex_cover_number};
use contractvc::oracles::{
    find_solution_pair, oracle_contraction_exact_size, oracle_contraction_vc, oracle_contraction_vc_naive,
    oracle_solution_pair,
};
use contractvc::{CvcInstance, Graph, VertexSet};

#[test]
fn partition_oracle_matches_naive_enumeration() {
    let graphs = (1..=5).flat_map(common::all_graphs).chain(
        (0..150u64).map(|s| contractvc::generators::random_graph(6 + (s % 2) as usize, 0.35, s)),
    );
    for g in graphs.filter(|g| g.m() <= 20) {
        for k in 0..=g.rank() {
            for d in 0..=k + 1 {
                let inst = CvcInstance::new(g.clone(), k, d);
                let a = oracle_contraction_vc(&inst).unwrap();
                let b = oracle_contraction_vc_naive(&inst).unwrap();
                assert_eq!(a.answer, b.answer, "{:?} k={k} d={d}", g.edge_set());
                // Both return the shortlex-least witness.
                assert_eq!(a.witness, b.witness, "{:?} k={k} d={d}", g.edge_set());
            }
        }
    }
}

/// With `k = rank(G)` (connected): YES iff `d ≤ vc(G)`.
/// With `k < rank(G)` and `2d ≤ k`: YES iff `d < vc(G)`.
#[test]
fn full_budget_and_double_budget_characterisations() {
    for g in common::connected_graphs(6) {
        let (rank, vc) = (g.rank(), vertex_cover_number(&g));
        for d in 0..=rank {
            let inst = CvcInstance::new(g.clone(), rank, d);
            assert_eq!(oracle_contraction_vc(&inst).unwrap().answer.is_yes(), d <= vc);
        }
        for k in 0..rank {
            for d in (1..).take_while(|d| 2 * d <= k) {
                let inst = CvcInstance::new(g.clone(), k, d);
                assert_eq!(oracle_contraction_vc(&inst).unwrap().answer.is_yes(), d < vc, "{:?}", g.edge_set());
            }
        }
    }
}

/// Exact-size contraction feasibility equals solution-pair feasibility.
#[test]
fn solution_pairs_characterise_contractions() {
    for g in common::connected_graphs(6) {
        let x = min_vertex_cover(&g).cover;
        for f in 0..g.rank() {
            for d in 0..=f + 1 {
                let by_edges = oracle_contraction_exact_size(&g, f, d).unwrap();
                let by_pairs = oracle_solution_pair(&g, &x, f, d).unwrap();
                assert_eq!(by_edges, by_pairs, "{:?} |F|={f} d={d}", g.edge_set());
            }
        }
    }
}

/// Cover vertices with a pendant neighbour can always be kept out of `X_s`.
#[test]
fn pendant_neighbours_stay_in_the_enlarged_cover() {
    let mut restricted = 0;
    let sampled = (0..300u64).map(|s| contractvc::generators::random_connected_graph(7 + (s % 2) as usize, 0.1, s));
    for g in common::connected_graphs(6).chain(sampled) {
        let x = min_vertex_cover(&g).cover;
        let keep: VertexSet =
            x.iter().copied().filter(|&v| g.neighbors(v).iter().any(|&w| g.degree(w) == 1)).collect();
        if keep.is_empty() {
            continue;
        }
        for f in 0..g.rank() {
            for d in 1..=f {
                let any = find_solution_pair(&g, &x, f, d, &VertexSet::new()).unwrap().is_some();
                let kept = find_solution_pair(&g, &x, f, d, &keep).unwrap().is_some();
                assert_eq!(any, kept, "{:?} f={f} d={d}", g.edge_set());
                restricted += usize::from(any);
            }
        }
    }
    assert!(restricted > 0);
}

#[test]
fn solution_pair_in_the_cover_swap_example() {
    let (g, x) = common::cover_swap_example();
    assert!(oracle_solution_pair(&g, &x, 3, 2).unwrap());
    // The pair ⟨{x3, x4}, {y3, y4, y5}⟩ meets all three conditions.
    let (xs, ys) = (VertexSet::from([2, 3]), VertexSet::from([6, 7, 8]));
    let enlarged: VertexSet = x.difference(&xs).chain(&ys).copied().collect();
    assert!(g.is_vertex_cover(&enlarged));
    assert_eq!(g.rank_vertex_set(&enlarged).unwrap(), 3);
    assert!(ys.len() - xs.len() <= 3 - 2);
}

#[test]
fn oracle_rejects_oversized_inputs() {
    let g = Graph::empty(11);
    assert!(oracle_contraction_vc(&CvcInstance::new(g, 1, 1)).is_err());
}
