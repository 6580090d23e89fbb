//! Exact subroutines used as black boxes by the solver: minimum vertex cover,
//! odd cycle transversal, covers given a transversal, saturating matchings, and
//! a brute-force bipartite-contraction check.
//!
//! The algorithms are simple exact ones (max-degree branching with a König
//! shortcut on bipartite remainders; iterative compression with a vertex
//! min-cut; `2^|T|` enumeration over a transversal) rather than the fastest
//! known, but they honour the same input/output contracts.

use std::collections::VecDeque;

use petgraph::algo::ford_fulkerson;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;

use crate::bits::BitGraph;
use crate::error::{Error, Result};
use crate::graph::{edge, EdgeSet, Graph, VertexId, VertexSet};

/// A vertex cover together with its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub size: usize,
    pub cover: VertexSet,
}

/// An odd cycle transversal together with its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctResult {
    pub size: usize,
    pub transversal: VertexSet,
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bounded<T> {
    Within(T),
    Exceeds,
}

impl<T> Bounded<T> {
    pub fn within(self) -> Option<T> {
        match self {
            Bounded::Within(t) => Some(t),
            Bounded::Exceeds => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Matchings and König covers
// ---------------------------------------------------------------------------

/// Augmenting-path matcher from a designated left side into the rest.
///
/// Each left vertex first takes its lowest free neighbour, and only otherwise
/// searches for an augmenting path; the order is fully deterministic.
struct Matcher<'a> {
    g: &'a Graph,
    allowed: &'a dyn Fn(VertexId) -> bool,
    mate_of_right: Vec<Option<VertexId>>,
    mate_of_left: Vec<Option<VertexId>>,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a Graph, allowed: &'a dyn Fn(VertexId) -> bool) -> Self {
        Self { g, allowed, mate_of_right: vec![None; g.n()], mate_of_left: vec![None; g.n()] }
    }

    fn grow(&mut self, x: VertexId) -> bool {
        for &y in self.g.neighbors(x) {
            if (self.allowed)(y) && self.mate_of_right[y].is_none() {
                self.mate_of_right[y] = Some(x);
                self.mate_of_left[x] = Some(y);
                return true;
            }
        }
        let mut seen = vec![false; self.g.n()];
        self.augment(x, &mut seen)
    }

    fn augment(&mut self, x: VertexId, seen: &mut [bool]) -> bool {
        for &y in self.g.neighbors(x) {
            if !(self.allowed)(y) || seen[y] {
                continue;
            }
            seen[y] = true;
            let free = match self.mate_of_right[y] {
                None => true,
                Some(x2) => self.augment(x2, seen),
            };
            if free {
                self.mate_of_right[y] = Some(x);
                self.mate_of_left[x] = Some(y);
                return true;
            }
        }
        false
    }
}

/// Maximum matching between `left` (in the given order) and the allowed
/// vertices outside it. Returns `mate_of_left`.
pub fn max_matching_from(
    g: &Graph,
    left: &[VertexId],
    allowed_right: &dyn Fn(VertexId) -> bool,
) -> Vec<Option<VertexId>> {
    let mut m = Matcher::new(g, allowed_right);
    for &x in left {
        m.grow(x);
    }
    m.mate_of_left
}

/// A matching covering every vertex of the independent set `x`, or `None`.
pub fn matching_saturating(g: &Graph, x: &VertexSet) -> Option<EdgeSet> {
    let left: Vec<VertexId> = x.iter().copied().collect();
    let not_in_x = |v: VertexId| !x.contains(&v);
    let mates = max_matching_from(g, &left, &not_in_x);
    left.iter().map(|&u| mates[u].map(|y| edge(u, y))).collect()
}

/// König cover of a bipartite graph given a proper 2-colouring.
fn konig_cover(g: &Graph, color: &[u8]) -> VertexSet {
    let left: Vec<VertexId> = (0..g.n()).filter(|&v| color[v] == 0).collect();
    let is_right = |v: VertexId| color[v] == 1;
    let mate_left = max_matching_from(g, &left, &is_right);
    let mut mate_right = vec![None; g.n()];
    for &x in &left {
        if let Some(y) = mate_left[x] {
            mate_right[y] = Some(x);
        }
    }
    // Alternating reachability from unmatched left vertices.
    let mut reached = vec![false; g.n()];
    let mut queue: VecDeque<VertexId> = left.iter().copied().filter(|&x| mate_left[x].is_none()).collect();
    for &x in &queue {
        reached[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if !reached[y] {
                reached[y] = true;
                if let Some(x2) = mate_right[y] {
                    if !reached[x2] {
                        reached[x2] = true;
                        queue.push_back(x2);
                    }
                }
            }
        }
    }
    (0..g.n())
        .filter(|&v| (color[v] == 0 && !reached[v]) || (color[v] == 1 && reached[v]))
        .collect()
}

/// Minimum vertex cover of a bipartite graph (panics if `g` is not bipartite).
pub fn bipartite_min_cover(g: &Graph) -> VertexSet {
    let color = g.bipartition().expect("graph must be bipartite");
    konig_cover(g, &color)
}

// ---------------------------------------------------------------------------
// Vertex cover
// ---------------------------------------------------------------------------

struct VcSearch<'a> {
    g: &'a Graph,
    best: Option<VertexSet>,
    /// Covers of size `>= bound` are not interesting.
    bound: usize,
}

impl VcSearch<'_> {
    fn active_degree(&self, active: &[bool], v: VertexId) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| active[w]).count()
    }

    /// Size of a greedy maximal matching in the active subgraph: a lower bound.
    fn matching_lower_bound(&self, active: &[bool]) -> usize {
        let mut used = vec![false; self.g.n()];
        let mut count = 0;
        for u in 0..self.g.n() {
            if !active[u] || used[u] {
                continue;
            }
            if let Some(&w) = self.g.neighbors(u).iter().find(|&&w| active[w] && !used[w]) {
                used[u] = true;
                used[w] = true;
                count += 1;
            }
        }
        count
    }

    fn run(&mut self, mut active: Vec<bool>, mut taken: Vec<VertexId>) {
        // Degree-one rule: the neighbour of a degree-one vertex may always be taken.
        loop {
            if taken.len() >= self.bound {
                return;
            }
            let mut changed = false;
            for v in 0..self.g.n() {
                if !active[v] {
                    continue;
                }
                match self.active_degree(&active, v) {
                    0 => {
                        active[v] = false;
                        changed = true;
                    }
                    1 => {
                        let u = *self.g.neighbors(v).iter().find(|&&w| active[w]).expect("one neighbour");
                        active[u] = false;
                        active[v] = false;
                        taken.push(u);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        if taken.len() + self.matching_lower_bound(&active) >= self.bound {
            return;
        }
        let rest: VertexSet = (0..self.g.n()).filter(|&v| active[v]).collect();
        if rest.is_empty() {
            self.record(taken);
            return;
        }
        let (sub, back) = self.g.induced(&rest);
        let Some(cycle) = sub.odd_cycle() else {
            let color = sub.bipartition().expect("no odd cycle");
            let cover = konig_cover(&sub, &color);
            taken.extend(cover.iter().map(|&v| back[v]));
            if taken.len() < self.bound {
                self.record(taken);
            }
            return;
        };
        // Branch on a maximum-degree vertex of an odd cycle: both branches
        // destroy that cycle, steering towards a bipartite remainder.
        let v = cycle
            .iter()
            .map(|&i| back[i])
            .max_by_key(|&v| (self.active_degree(&active, v), std::cmp::Reverse(v)))
            .expect("non-empty cycle");
        // Branch 1: v in the cover.
        let mut a1 = active.clone();
        a1[v] = false;
        let mut t1 = taken.clone();
        t1.push(v);
        self.run(a1, t1);
        // Branch 2: all active neighbours of v in the cover.
        let nb: Vec<VertexId> = self.g.neighbors(v).iter().copied().filter(|&w| active[w]).collect();
        for &w in &nb {
            active[w] = false;
        }
        active[v] = false;
        taken.extend(nb);
        self.run(active, taken);
    }

    fn record(&mut self, taken: Vec<VertexId>) {
        self.bound = taken.len();
        self.best = Some(taken.into_iter().collect());
    }
}

/// Minimum vertex cover if `vc(g) ≤ limit`, else [`Bounded::Exceeds`].
pub fn vc_at_most(g: &Graph, limit: usize) -> Bounded<CoverResult> {
    let mut search = VcSearch { g, best: None, bound: limit + 1 };
    search.run(vec![true; g.n()], Vec::new());
    match search.best {
        Some(cover) => Bounded::Within(CoverResult { size: cover.len(), cover }),
        None => Bounded::Exceeds,
    }
}

/// An exact minimum vertex cover (deterministic).
pub fn min_vertex_cover(g: &Graph) -> CoverResult {
    vc_at_most(g, g.n()).within().expect("V(G) is always a cover")
}

/// `vc(g)` as a number.
pub fn vertex_cover_number(g: &Graph) -> usize {
    min_vertex_cover(g).size
}

// ---------------------------------------------------------------------------
// Odd cycle transversal
// ---------------------------------------------------------------------------

/// A minimum odd cycle transversal if `oct(g) ≤ limit`, else `Exceeds`.
pub fn oct_at_most(g: &Graph, limit: usize) -> Bounded<OctResult> {
    for budget in 0..=limit.min(g.n()) {
        if let Some(t) = oct_within(g, budget) {
            return Bounded::Within(OctResult { size: t.len(), transversal: t });
        }
    }
    Bounded::Exceeds
}

/// `oct(g)` together with a minimum transversal.
pub fn min_oct(g: &Graph) -> OctResult {
    oct_at_most(g, g.n()).within().expect("V(G) is always a transversal")
}

/// Some transversal of size ≤ `budget`, by iterative compression over the
/// vertex order `0..n`.
fn oct_within(g: &Graph, budget: usize) -> Option<VertexSet> {
    if budget == 0 {
        return g.bipartition().map(|_| VertexSet::new());
    }
    let mut z = VertexSet::new();
    let mut prefix = VertexSet::new();
    for v in 0..g.n() {
        prefix.insert(v);
        z.insert(v);
        if z.len() > budget {
            let (sub, back) = g.induced(&prefix);
            let local_z: VertexSet = z.iter().map(|x| back.binary_search(x).expect("in prefix")).collect();
            let smaller = compress_oct(&sub, &local_z, budget)?;
            z = smaller.into_iter().map(|x| back[x]).collect();
        }
    }
    Some(z)
}

/// Given a transversal `z` of size `budget + 1`, finds one of size ≤ `budget`.
fn compress_oct(g: &Graph, z: &VertexSet, budget: usize) -> Option<VertexSet> {
    let zs: Vec<VertexId> = z.iter().copied().collect();
    let outside: VertexSet = (0..g.n()).filter(|v| !z.contains(v)).collect();
    let (rest, back) = g.induced(&outside);
    let color = rest.bipartition().expect("z is a transversal");
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in back.iter().enumerate() {
        pos[v] = i;
    }
    // Assignment digits: 0 = delete, 1 = side A, 2 = side B.
    let total = 3usize.pow(zs.len() as u32);
    for code in 0..total {
        let mut digits = Vec::with_capacity(zs.len());
        let mut c = code;
        for _ in 0..zs.len() {
            digits.push(c % 3);
            c /= 3;
        }
        let deleted: Vec<VertexId> = zs.iter().zip(&digits).filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        if deleted.len() > budget {
            continue;
        }
        let side = |v: VertexId| digits[zs.iter().position(|&x| x == v).expect("in z")];
        let consistent = zs.iter().zip(&digits).all(|(&v, &d)| {
            d == 0 || g.neighbors(v).iter().all(|&w| !z.contains(&w) || side(w) != d)
        });
        if !consistent {
            continue;
        }
        // Demands on outside vertices: 1 = keep the base colouring, 2 = flip it.
        let mut demand = vec![0u8; rest.n()];
        for (&v, &d) in zs.iter().zip(&digits) {
            if d == 0 {
                continue;
            }
            let needed = if d == 1 { 1 } else { 0 };
            for &w in g.neighbors(v) {
                if z.contains(&w) {
                    continue;
                }
                let i = pos[w];
                let want = if color[i] == needed { 1 } else { 2 };
                demand[i] |= want;
            }
        }
        let forced: Vec<usize> = (0..rest.n()).filter(|&i| demand[i] == 3).collect();
        let remaining = budget - deleted.len();
        if forced.len() > remaining {
            continue;
        }
        if let Some(cut) = min_separator(&rest, &demand, remaining - forced.len()) {
            let mut out: VertexSet = deleted.into_iter().collect();
            out.extend(forced.iter().map(|&i| back[i]));
            out.extend(cut.into_iter().map(|i| back[i]));
            return Some(out);
        }
    }
    None
}

/// Minimum vertex set separating demand-1 from demand-2 vertices (vertices with
/// demand 3 are treated as already deleted), if its size is ≤ `limit`.
fn min_separator(g: &Graph, demand: &[u8], limit: usize) -> Option<Vec<usize>> {
    let has_keep = demand.contains(&1);
    let has_flip = demand.contains(&2);
    if !has_keep || !has_flip {
        return Some(Vec::new());
    }
    let inf = (g.n() + 1) as u32;
    let mut net: DiGraph<(), u32> = DiGraph::new();
    let source = net.add_node(());
    let sink = net.add_node(());
    let ins: Vec<NodeIndex> = (0..g.n()).map(|_| net.add_node(())).collect();
    let outs: Vec<NodeIndex> = (0..g.n()).map(|_| net.add_node(())).collect();
    for v in 0..g.n() {
        if demand[v] == 3 {
            continue;
        }
        net.add_edge(ins[v], outs[v], 1);
        if demand[v] == 2 {
            net.add_edge(source, ins[v], inf);
        }
        if demand[v] == 1 {
            net.add_edge(outs[v], sink, inf);
        }
    }
    for (u, v) in g.edges() {
        if demand[u] == 3 || demand[v] == 3 {
            continue;
        }
        net.add_edge(outs[u], ins[v], inf);
        net.add_edge(outs[v], ins[u], inf);
    }
    let (value, flows) = ford_fulkerson(&net, source, sink);
    if value as usize > limit {
        return None;
    }
    // Residual reachability from the source.
    let mut reach = vec![false; net.node_count()];
    reach[source.index()] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(a) = queue.pop_front() {
        for e in net.edges_directed(a, petgraph::Direction::Outgoing) {
            let b = e.target();
            if !reach[b.index()] && flows[e.id().index()] < *e.weight() {
                reach[b.index()] = true;
                queue.push_back(b);
            }
        }
        for e in net.edges_directed(a, petgraph::Direction::Incoming) {
            let b = e.source();
            if !reach[b.index()] && flows[e.id().index()] > 0 {
                reach[b.index()] = true;
                queue.push_back(b);
            }
        }
    }
    let cut: Vec<usize> = (0..g.n())
        .filter(|&v| demand[v] != 3 && reach[ins[v].index()] && !reach[outs[v].index()])
        .collect();
    debug_assert_eq!(cut.len(), value as usize);
    Some(cut)
}

/// Exact minimum vertex cover using an odd cycle transversal: guess which
/// transversal vertices are in the cover, then solve the bipartite rest.
pub fn min_vc_given_oct(g: &Graph, t: &OctResult) -> Result<CoverResult> {
    let outside: VertexSet = (0..g.n()).filter(|v| !t.transversal.contains(v)).collect();
    if t.transversal.iter().any(|&v| v >= g.n()) || g.induced(&outside).0.bipartition().is_none() {
        return Err(Error::InvalidTransversal);
    }
    let ts: Vec<VertexId> = t.transversal.iter().copied().collect();
    let mut best: Option<VertexSet> = None;
    for mask in 0u64..(1u64 << ts.len()) {
        let excluded: VertexSet =
            ts.iter().enumerate().filter(|(i, _)| mask & (1 << i) == 0).map(|(_, &v)| v).collect();
        if !g.is_independent_set(&excluded) {
            continue;
        }
        let mut cover: VertexSet =
            ts.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect();
        cover.extend(g.neighborhood(&excluded));
        let rest: VertexSet = outside.iter().copied().filter(|v| !cover.contains(v)).collect();
        let (sub, back) = g.induced(&rest);
        cover.extend(bipartite_min_cover(&sub).into_iter().map(|v| back[v]));
        if best.as_ref().is_none_or(|b| cover.len() < b.len()) {
            best = Some(cover);
        }
    }
    let cover = best.expect("the all-in guess is always feasible");
    Ok(CoverResult { size: cover.len(), cover })
}

// ---------------------------------------------------------------------------
// Bipartite contraction (test support)
// ---------------------------------------------------------------------------

/// Whether ≤ `limit` contractions make `g` bipartite, via the characterisation
/// "some 2-partition has `rank(V_L) + rank(V_R) ≤ limit`". Exhaustive.
pub fn bc_at_most_bruteforce(g: &Graph, limit: usize) -> Result<bool> {
    if g.n() > 20 {
        return Err(Error::TooLarge(format!("bc brute force needs |V| ≤ 20, got {}", g.n())));
    }
    let b = BitGraph::from_graph(g);
    let full = b.full();
    Ok((0..=full).any(|left| (b.rank(left) + b.rank(full & !left)) as usize <= limit))
}
