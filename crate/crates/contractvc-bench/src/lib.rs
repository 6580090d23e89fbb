//! Benchmark fixtures shared by the criterion benches.

use contractvc::generators::random_bipartite_with_cover;
use contractvc::{solve, CvcInstance, Graph};

/// A seeded bipartite graph on `n` vertices (a third on the cover side) with
/// expected `X`-degree about `avg_degree`.
pub fn bipartite(n: usize, avg_degree: f64, seed: u64) -> Graph {
    let n_x = n / 3;
    let n_y = n - n_x;
    random_bipartite_with_cover(n_x, n_y, (avg_degree / n_y as f64).min(1.0), seed).0
}

/// `(G, d + gap, d)` on [`bipartite`].
pub fn instance(n: usize, d: usize, gap: usize, seed: u64) -> CvcInstance {
    CvcInstance::new(bipartite(n, 3.0, seed), d + gap, d)
}

/// The first seed from `seed` on whose graph `(G, d, d)` is a NO instance, so
/// that every budget has to be searched in full.
pub fn no_seed(n: usize, d: usize, seed: u64) -> u64 {
    (seed..).find(|&s| !solve(&instance(n, d, 0, s)).answer.is_yes()).expect("some seed is NO")
}
