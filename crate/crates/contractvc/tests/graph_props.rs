//! Properties of graphs, contraction and rank.

use contractvc::generators::random_graph;
use contractvc::{EdgeSet, Graph, VertexSet};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=9, 0.0f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, seed))
}

fn subset_of_edges(g: &Graph, mask: u64) -> EdgeSet {
    g.edges().enumerate().filter(|(i, _)| mask & (1 << (i % 64)) != 0).map(|(_, e)| e).collect()
}

proptest! {
    #[test]
    fn text_round_trip_is_exact(g in graph_strategy()) {
        let text = g.to_text();
        let back = Graph::from_text(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn contraction_lowers_rank_by_forest_size(g in graph_strategy(), mask in any::<u64>()) {
        let f = subset_of_edges(&g, mask);
        let (h, map) = g.contract_edges(&f).unwrap();
        // Contracting F removes exactly rank(V, F) vertices.
        let forest_rank = contractvc::graph::rank_of_edge_list(f.iter().copied());
        prop_assert_eq!(h.n(), g.n() - forest_rank);
        prop_assert_eq!(h.rank(), g.rank() - forest_rank);
        // Preimages partition V(G) and are connected in (V, F).
        let mut seen = vec![false; g.n()];
        for class in &map.preimages {
            for &v in class {
                prop_assert!(!std::mem::replace(&mut seen[v], true));
            }
            let sub = g.without_edges(&g.edge_set().difference(&f).copied().collect());
            let (induced, _) = sub.induced(&class.iter().copied().collect());
            prop_assert!(induced.is_connected());
        }
        prop_assert!(seen.into_iter().all(|s| s));
        // Classes are numbered by their smallest member.
        let firsts: Vec<usize> = map.preimages.iter().map(|c| c[0]).collect();
        prop_assert!(firsts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn spanning_forest_has_rank_many_edges(g in graph_strategy(), mask in any::<u64>()) {
        let s: VertexSet = (0..g.n()).filter(|v| mask & (1 << v) != 0).collect();
        let f = g.spanning_forest(&s).unwrap();
        prop_assert_eq!(f.len(), g.rank_vertex_set(&s).unwrap());
        prop_assert!(f.iter().all(|&(u, v)| s.contains(&u) && s.contains(&v) && g.has_edge(u, v)));
        prop_assert_eq!(contractvc::graph::rank_of_edge_list(f.iter().copied()), f.len());
    }

    #[test]
    fn cover_and_independence_are_complementary(g in graph_strategy(), mask in any::<u64>()) {
        let s: VertexSet = (0..g.n()).filter(|v| mask & (1 << v) != 0).collect();
        let rest: VertexSet = (0..g.n()).filter(|v| !s.contains(v)).collect();
        prop_assert_eq!(g.is_vertex_cover(&s), g.is_independent_set(&rest));
    }

    #[test]
    fn odd_cycle_exists_iff_not_bipartite(g in graph_strategy()) {
        match g.odd_cycle() {
            Some(c) => {
                prop_assert!(g.bipartition().is_none());
                prop_assert!(c.len() % 2 == 1);
                for i in 0..c.len() {
                    prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            None => prop_assert!(g.bipartition().is_some()),
        }
    }
}

#[test]
fn parse_rejects_malformed_input() {
    assert!(Graph::from_text("p 2 1\ne 1 1\n").is_err());
    assert!(Graph::from_text("p 2 1\ne 1 3\n").is_err());
    assert!(Graph::from_text("p 2 2\ne 1 2\ne 2 1\n").is_err());
    assert!(Graph::from_text("e 1 2\n").is_err());
    let g = Graph::from_text("c a comment\n\np 3 2\ne 1 2\ne 3 2\n").unwrap();
    assert_eq!(g.to_text(), "p 3 2\ne 1 2\ne 2 3\n");
}
