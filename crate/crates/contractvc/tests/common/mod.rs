//! Helpers shared by the integration tests.
#![allow(dead_code)]

use contractvc::Graph;

/// Every labelled graph on `n` vertices, in mask order over the pairs.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..(1 << pairs.len())).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e).collect();
        Graph::new(n, &edges).expect("valid edges")
    })
}

/// Every connected labelled graph on `1..=max_n` vertices.
pub fn connected_graphs(max_n: usize) -> impl Iterator<Item = Graph> {
    (1..=max_n).flat_map(all_graphs).filter(Graph::is_connected)
}

use contractvc::digraph::{Digraph, DigraphMaxcutInstance};
use contractvc::exact::min_vertex_cover;
use contractvc::generators::random_connected_graph_with;
use contractvc::pipeline::{enumerate_annotated, AnnotatedInstance};
use contractvc::{CvcInstance, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded annotated instance on a connected graph with 4–8 vertices, in the
/// regime the solver reaches: `X` a minimum cover, `rank(X) < d ≤ k < rank(G)`,
/// and the annotation drawn from the solver's enumeration.
pub fn sample_annotated(seed: u64) -> AnnotatedInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.random_range(4..=8);
        let p = rng.random_range(0.0..0.5);
        let g = random_connected_graph_with(n, p, &mut rng);
        let rank = g.rank();
        if rank < 2 {
            continue;
        }
        let x = min_vertex_cover(&g).cover;
        let rank_x = g.rank_vertex_set(&x).expect("in range");
        if rank_x + 1 >= rank {
            continue;
        }
        let k = rng.random_range(rank_x + 1..rank);
        let d = rng.random_range(rank_x + 1..=k);
        let all = enumerate_annotated(&CvcInstance::new(g, k, d), &x);
        return all[rng.random_range(0..all.len())].clone();
    }
}

/// A seeded directed max-cut instance on at most 8 vertices.
pub fn sample_digraph_instance(seed: u64) -> DigraphMaxcutInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=8);
    let p = rng.random_range(0.05..0.5);
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(p) {
                arcs.push((a, b));
            }
        }
    }
    let mut x_left = VertexSet::new();
    let mut x_right = VertexSet::new();
    for v in 0..n {
        match rng.random_range(0..8) {
            0 => {
                x_left.insert(v);
            }
            1 => {
                x_right.insert(v);
            }
            _ => {}
        }
    }
    let k = rng.random_range(0..=n.min(5));
    DigraphMaxcutInstance { d: Digraph::new(n, arcs).expect("no loops"), x_left, x_right, k }
}

/// The two-cover-swap example: `x1..x4` are vertices `0..4`, `y1..y5` are
/// `4..9`; `X = {x1..x4}` is a minimum cover, and contracting
/// `{x1y5, x2y5, x2y4}` lowers the cover number by two.
pub fn cover_swap_example() -> (Graph, VertexSet) {
    let (x1, x2, x3, x4) = (0, 1, 2, 3);
    let (y1, y2, y3, y4, y5) = (4, 5, 6, 7, 8);
    let edges = [(x1, y1), (x1, y5), (x2, y2), (x2, y4), (x2, y5), (x3, y3), (x3, y5), (x4, y4), (x4, y3)];
    (Graph::new(9, &edges).expect("valid"), (0..4).collect())
}

/// The witness shown with the example: `{x1y5, x2y5, x2y4}`.
pub fn cover_swap_witness() -> contractvc::EdgeSet {
    [(0, 8), (1, 8), (1, 7)].into_iter().collect()
}
