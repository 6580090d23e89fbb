//! Hardness constructions and seeded random instance factories.
//!
//! The constructions map multicoloured independent set to Contraction(vc)
//! with `k = d` (and `k = d + (ℓ−1)q` in general), multicoloured independent
//! set to edge induced forest, and edge induced forest to Contraction(vc) on a
//! bipartite graph with `d ≤ k < 2d`. Each keeps a side table of readable
//! vertex names in bracket notation (`_` stands for an unused index).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::vertex_cover_number;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::instance::{CvcInstance, EifInstance, MisInstance};

/// A generated instance with names for its vertices and, where the
/// construction provides one, a minimum vertex cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated<T> {
    pub instance: T,
    pub names: Vec<String>,
    pub cover: Option<VertexSet>,
}

/// Incrementally named vertex/edge lists.
#[derive(Default)]
struct Builder {
    names: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Builder {
    fn vertex(&mut self, name: String) -> VertexId {
        self.names.push(name);
        self.names.len() - 1
    }

    fn edge(&mut self, u: VertexId, v: VertexId) {
        self.edges.push((u, v));
    }

    fn finish(mut self) -> (Graph, Vec<String>) {
        self.edges.iter_mut().for_each(|e| *e = crate::graph::edge(e.0, e.1));
        self.edges.sort_unstable();
        self.edges.dedup();
        let g = Graph::new(self.names.len(), &self.edges).expect("construction edges are valid");
        (g, self.names)
    }
}

/// Checks the `(3×q)` form: classes partition the vertices, each is a
/// triangle.
fn check_three_by_q(mis: &MisInstance) -> Result<()> {
    let mut seen = vec![false; mis.g.n()];
    for (i, class) in mis.classes.iter().enumerate() {
        if class.len() != 3 {
            return Err(Error::NotThreeByQ(format!("class {i} has {} vertices", class.len())));
        }
        for &v in class {
            if v >= mis.g.n() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotThreeByQ(format!("class {i} repeats or exceeds vertex {v}")));
            }
            if class.iter().any(|&u| u != v && !mis.g.has_edge(u, v)) {
                return Err(Error::NotThreeByQ(format!("class {i} is not a clique")));
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotThreeByQ("classes do not cover every vertex".into()));
    }
    Ok(())
}

/// The reduction from `(3×q)` multicoloured independent set: for every class
/// `i` and copy `j ∈ [ℓ]`, a vertex `W[i,j,_]` with pendant `P[i,j,_]` joined
/// to `U[i,j,1..3]`, each `U[i,j,z]` matched to `V[i,_,z]`; a hub `V[_,_,_]`
/// with pendant `P[_,_,_]` adjacent to every `V` and `U` vertex. Returns
/// `(G', k, d)` with `d = (ℓ+3)q`, `k = d + (ℓ−1)q`, and the minimum cover
/// `V ∪ W ∪ {V[_,_,_]}`.
pub fn gen_np_hard(mis: &MisInstance, l: usize) -> Result<Generated<CvcInstance>> {
    check_three_by_q(mis)?;
    if l == 0 {
        return Err(Error::InvalidInstance("ℓ must be positive".into()));
    }
    let q = mis.classes.len();
    let mut b = Builder::default();
    // V[i,_,z] keeps the id layout of the classes (members in increasing order).
    let mut v_of = vec![[0usize; 3]; q];
    for (i, class) in mis.classes.iter().enumerate() {
        for (z, _) in class.iter().enumerate() {
            v_of[i][z] = b.vertex(format!("V[{},_,{}]", i + 1, z + 1));
        }
    }
    let mut position = vec![(0, 0); mis.g.n()];
    for (i, class) in mis.classes.iter().enumerate() {
        for (z, &v) in class.iter().enumerate() {
            position[v] = (i, z);
        }
    }
    for (u, v) in mis.g.edges() {
        let ((iu, zu), (iv, zv)) = (position[u], position[v]);
        b.edge(v_of[iu][zu], v_of[iv][zv]);
    }
    let hub = b.vertex("V[_,_,_]".into());
    let hub_pendant = b.vertex("P[_,_,_]".into());
    b.edge(hub, hub_pendant);
    let mut cover: VertexSet = v_of.iter().flatten().copied().chain([hub]).collect();
    for i in 0..q {
        for &v in &v_of[i] {
            b.edge(hub, v);
        }
        for j in 0..l {
            let w = b.vertex(format!("W[{},{},_]", i + 1, j + 1));
            let p = b.vertex(format!("P[{},{},_]", i + 1, j + 1));
            cover.insert(w);
            b.edge(w, p);
            for z in 0..3 {
                let u = b.vertex(format!("U[{},{},{}]", i + 1, j + 1, z + 1));
                b.edge(w, u);
                b.edge(v_of[i][z], u);
                b.edge(hub, u);
            }
        }
    }
    let (g, names) = b.finish();
    let d = (l + 3) * q;
    let k = d + (l - 1) * q;
    Ok(Generated { instance: CvcInstance::new(g, k, d), names, cover: Some(cover) })
}

/// Adds a universal vertex `α` and `q + 1` pendants on it; `ℓ = 2q + 1`.
pub fn gen_eif_from_mis(mis: &MisInstance) -> Generated<EifInstance> {
    let q = mis.classes.len();
    let mut b = Builder::default();
    for v in 0..mis.g.n() {
        b.vertex(format!("v{v}"));
    }
    for (u, v) in mis.g.edges() {
        b.edge(u, v);
    }
    let alpha = b.vertex("alpha".into());
    for v in 0..mis.g.n() {
        b.edge(v, alpha);
    }
    for i in 0..=q {
        let x = b.vertex(format!("x{}", i + 1));
        b.edge(x, alpha);
    }
    let (g, names) = b.finish();
    Generated { instance: EifInstance { g, l: 2 * q + 1 }, names, cover: None }
}

/// The reduction from edge induced forest: per vertex `u` an edge `z_u p_u`;
/// per edge `uv` the gadget `y^a y^b, y^a y^c, y^b w^1, y^b w^2, w^1 p^1,
/// w^2 p^2` with `y^c` joined to `z_u` and `z_v`. Sets `k = 4ℓ`, `d = 3ℓ`; the
/// minimum cover is `Z ∪ W ∪ Y^a`.
pub fn gen_cvc_from_eif(eif: &EifInstance) -> Generated<CvcInstance> {
    let mut b = Builder::default();
    let mut cover = VertexSet::new();
    let mut z = Vec::with_capacity(eif.g.n());
    for u in 0..eif.g.n() {
        let zu = b.vertex(format!("z[{u}]"));
        let pu = b.vertex(format!("p[{u}]"));
        b.edge(zu, pu);
        cover.insert(zu);
        z.push(zu);
    }
    for (u, v) in eif.g.edges() {
        let mut named = |tag: &str| b.vertex(format!("{tag}[{u},{v}]"));
        let ya = named("ya");
        let yb = named("yb");
        let yc = named("yc");
        let w1 = named("w1");
        let w2 = named("w2");
        let p1 = named("p1");
        let p2 = named("p2");
        cover.extend([ya, w1, w2]);
        for (s, t) in [(z[u], yc), (z[v], yc), (ya, yb), (ya, yc), (yb, w1), (yb, w2), (w1, p1), (w2, p2)] {
            b.edge(s, t);
        }
    }
    let (g, names) = b.finish();
    Generated { instance: CvcInstance::new(g, 4 * eif.l, 3 * eif.l), names, cover: Some(cover) }
}

/// A seeded random bipartite graph on `X = 0..n_x`, `Y = n_x..n_x+n_y` with a
/// random matching saturating `X` plus every other `X`–`Y` pair with
/// probability `edge_prob`; `X` is then a minimum vertex cover.
///
/// # Panics
/// If `n_x > n_y` or `edge_prob ∉ [0, 1]`.
pub fn random_bipartite_with_cover(n_x: usize, n_y: usize, edge_prob: f64, seed: u64) -> (Graph, VertexSet) {
    assert!(n_x <= n_y, "a cover side larger than the other side cannot be minimum");
    assert!((0.0..=1.0).contains(&edge_prob), "probability out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ys: Vec<usize> = (n_x..n_x + n_y).collect();
    ys.shuffle(&mut rng);
    let mut edges = Vec::new();
    for x in 0..n_x {
        for y in n_x..n_x + n_y {
            if y == ys[x] || rng.random_bool(edge_prob) {
                edges.push((x, y));
            }
        }
    }
    let g = Graph::new(n_x + n_y, &edges).expect("bipartite edges are valid");
    let cover: VertexSet = (0..n_x).collect();
    debug_assert_eq!(vertex_cover_number(&g), n_x);
    (g, cover)
}

/// A seeded `(3×q)` instance: `q` triangles on `3i..3i+3`, with each pair
/// of vertices in different classes adjacent with a density drawn per
/// instance from `[0.3, 1]` (so both answers occur).
pub fn random_mis_instance(q: usize, seed: u64) -> MisInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.random_range(0.3..=1.0);
    random_mis_instance_with(q, p, &mut rng)
}

/// As [`random_mis_instance`] with an explicit cross-class edge density.
pub fn random_mis_instance_with(q: usize, p: f64, rng: &mut impl Rng) -> MisInstance {
    let n = 3 * q;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u / 3 == v / 3 || rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, &edges).expect("valid edges");
    let classes = (0..q).map(|i| (3 * i..3 * i + 3).collect()).collect();
    MisInstance { g, classes }
}

/// A seeded connected graph: a random labelled tree plus every further pair
/// with probability `extra_prob`.
pub fn random_connected_graph(n: usize, extra_prob: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected_graph_with(n, extra_prob, &mut rng)
}

pub fn random_connected_graph_with(n: usize, extra_prob: f64, rng: &mut impl Rng) -> Graph {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        edges.push(crate::graph::edge(label[i], label[j]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(extra_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_lossy(n, edges)
}

/// A seeded graph where each pair is an edge with probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
    Graph::new(n, &edges).expect("valid edges")
}
