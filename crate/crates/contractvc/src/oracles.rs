//! Exhaustive brute-force deciders, the ground truth for every test.
//!
//! The oracles share no algorithmic code with the solver: they enumerate
//! partitions or subsets directly and evaluate them with the bitmask helpers
//! in [`crate::bits`]. Every oracle refuses inputs above an explicit size cap
//! with [`Error::TooLarge`] instead of running for hours.

use std::time::Instant;

use crate::bits::{members, BitGraph};
use crate::digraph::DigraphMaxcutInstance;
use crate::error::{Error, Result};
use crate::graph::{edge, rank_of_edge_list, Edge, EdgeSet, Graph, VertexId, VertexSet};
use crate::instance::{Branch, CvcInstance, EifInstance, MisInstance, SolveStats, Verdict};
use crate::pipeline::{AnnotatedInstance, MaxcutInstance};

/// Environment variable overriding the vertex cap of [`OracleCaps::from_env`].
pub const CAP_ENV: &str = "CONTRACTVC_ORACLE_CAP";

/// Size limits for [`oracle_contraction_vc`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_vertices: usize,
    pub max_k: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self { max_vertices: 10, max_k: 6 }
    }
}

impl OracleCaps {
    /// Defaults, with the vertex cap replaced by `CONTRACTVC_ORACLE_CAP` if set.
    pub fn from_env() -> Self {
        let mut caps = Self::default();
        if let Some(n) = std::env::var(CAP_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            caps.max_vertices = n;
        }
        caps
    }
}

/// Bitmask of a vertex set.
fn mask_of(s: &VertexSet) -> u64 {
    s.iter().fold(0, |acc, &v| acc | (1u64 << v))
}

fn too_large(what: &str, size: usize, cap: usize) -> Error {
    Error::TooLarge(format!("{what} {size} exceeds the oracle cap {cap}"))
}

/// Decides Contraction(vc) with the caps from the environment.
pub fn oracle_contraction_vc(inst: &CvcInstance) -> Result<Verdict> {
    oracle_contraction_vc_capped(inst, OracleCaps::from_env())
}

/// Decides Contraction(vc) exhaustively.
///
/// Contracting `F` merges the components of `(V, F)`, so the quotients
/// reachable with `≤ k` contractions are exactly those of vertex partitions
/// into connected blocks with `Σ (|B| − 1) ≤ k`. All such partitions are
/// enumerated and the cover number of each quotient computed by branching.
///
/// The witness is canonical: the shortest solutions are spanning forests of
/// some block partition, and among them the lexicographically least sorted
/// edge list is returned (greedy forest per partition, minimum over
/// partitions). [`oracle_contraction_vc_naive`] agrees with it on small graphs.
pub fn oracle_contraction_vc_capped(inst: &CvcInstance, caps: OracleCaps) -> Result<Verdict> {
    let start = Instant::now();
    let g = &inst.g;
    let n = g.n();
    if n > caps.max_vertices {
        return Err(too_large("vertex count", n, caps.max_vertices));
    }
    let bg = BitGraph::from_graph(g);
    let rank = bg.rank(bg.full()) as usize;
    let k = inst.k.min(rank);
    if k > caps.max_k {
        return Err(too_large("budget", k, caps.max_k));
    }
    let vc = bg.min_cover_size(bg.full()) as usize;
    let mut search = PartitionSearch {
        g,
        bg: &bg,
        k,
        target: vc.checked_sub(inst.d),
        blocks: Vec::new(),
        best: None,
        nodes: 0,
    };
    if search.target.is_some() {
        search.assign(0);
    }
    let stats = SolveStats {
        branch: Some(Branch::Oracle),
        nodes: search.nodes,
        elapsed: start.elapsed(),
        ..SolveStats::default()
    };
    let mut verdict = match search.best {
        Some((_, f)) => Verdict::yes(Some(f.into_iter().collect())),
        None => Verdict::no(),
    };
    verdict.stats = stats;
    Ok(verdict)
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    bg: &'a BitGraph,
    k: usize,
    target: Option<usize>,
    blocks: Vec<u64>,
    best: Option<(usize, Vec<Edge>)>,
    nodes: usize,
}

impl PartitionSearch<'_> {
    fn assign(&mut self, v: usize) {
        let n = self.bg.n();
        if v == n {
            self.leaf();
            return;
        }
        // Cost so far is v − #blocks; joining an existing block adds one.
        for i in 0..self.blocks.len() {
            if v - self.blocks.len() < self.k {
                self.blocks[i] |= 1 << v;
                self.assign(v + 1);
                self.blocks[i] &= !(1 << v);
            }
        }
        self.blocks.push(1 << v);
        self.assign(v + 1);
        self.blocks.pop();
    }

    fn leaf(&mut self) {
        self.nodes += 1;
        if self.blocks.iter().any(|&b| self.bg.components(b) != 1) {
            return;
        }
        let block_of: Vec<usize> = (0..self.bg.n())
            .map(|v| self.blocks.iter().position(|&b| b & (1 << v) != 0).expect("every vertex placed"))
            .collect();
        let mut adj = vec![0u64; self.blocks.len()];
        for (u, v) in self.g.edges() {
            let (a, b) = (block_of[u], block_of[v]);
            if a != b {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        let quotient = BitGraph { adj };
        let target = self.target.expect("checked before search");
        if quotient.min_cover_size(quotient.full()) as usize > target {
            return;
        }
        let cost = self.bg.n() - self.blocks.len();
        if self.best.as_ref().is_some_and(|(c, _)| *c < cost) {
            return;
        }
        let forest = greedy_forest(self.g, &block_of);
        let candidate = (cost, forest);
        if self.best.as_ref().is_none_or(|b| candidate < *b) {
            self.best = Some(candidate);
        }
    }
}

/// The lexicographically least spanning forest of the blocks: scan edges in
/// canonical order, keeping those inside a block that join two trees.
fn greedy_forest(g: &Graph, block_of: &[usize]) -> Vec<Edge> {
    let mut root: Vec<usize> = (0..g.n()).collect();
    fn find(root: &mut [usize], mut v: usize) -> usize {
        while root[v] != v {
            root[v] = root[root[v]];
            v = root[v];
        }
        v
    }
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if block_of[u] != block_of[v] {
            continue;
        }
        let (a, b) = (find(&mut root, u), find(&mut root, v));
        if a != b {
            root[a] = b;
            out.push((u, v));
        }
    }
    out
}

/// Decides Contraction(vc) by enumerating edge subsets in shortlex order
/// (size first, then lexicographic); returns the first solution found.
/// Only for cross-checking [`oracle_contraction_vc`]; requires `|E| ≤ 20`.
pub fn oracle_contraction_vc_naive(inst: &CvcInstance) -> Result<Verdict> {
    let k = inst.k.min(inst.g.rank());
    naive_in_sizes(inst, 0..=k)
}

/// Whether some `F` with exactly `f_size` edges has `vc(G/F) ≤ vc(G) − d`.
/// Requires `|E| ≤ 20`.
pub fn oracle_contraction_exact_size(g: &Graph, f_size: usize, d: usize) -> Result<bool> {
    let inst = CvcInstance::new(g.clone(), f_size, d);
    Ok(naive_in_sizes(&inst, f_size..=f_size)?.answer.is_yes())
}

fn naive_in_sizes(inst: &CvcInstance, sizes: std::ops::RangeInclusive<usize>) -> Result<Verdict> {
    let g = &inst.g;
    let edges: Vec<Edge> = g.edges().collect();
    if edges.len() > 20 || g.n() > 64 {
        return Err(too_large("edge count", edges.len(), 20));
    }
    let bg = BitGraph::from_graph(g);
    let vc = bg.min_cover_size(bg.full()) as usize;
    let Some(target) = vc.checked_sub(inst.d) else {
        return Ok(Verdict::no().with_branch(Branch::Oracle));
    };
    for size in sizes.filter(|&s| s <= edges.len()) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mut class: Vec<usize> = (0..g.n()).collect();
            for &i in &combo {
                let (u, v) = edges[i];
                let (a, b) = (class[u], class[v]);
                for c in class.iter_mut() {
                    if *c == b {
                        *c = a;
                    }
                }
            }
            let mut adj = vec![0u64; g.n()];
            for &(u, v) in &edges {
                if class[u] != class[v] {
                    adj[class[u]] |= 1 << class[v];
                    adj[class[v]] |= 1 << class[u];
                }
            }
            let quotient = BitGraph { adj };
            if quotient.min_cover_size(quotient.full()) as usize <= target {
                let f: EdgeSet = combo.iter().map(|&i| edges[i]).collect();
                return Ok(Verdict::yes(Some(f)).with_branch(Branch::Oracle));
            }
            if !next_combination(&mut combo, edges.len()) {
                break;
            }
        }
    }
    Ok(Verdict::no().with_branch(Branch::Oracle))
}

/// Advances `combo` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order; `false` when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let q = combo.len();
    let mut i = q;
    while i > 0 && combo[i - 1] == n - q + i - 1 {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    combo[i - 1] += 1;
    for j in i..q {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

/// Whether a solution pair `⟨X_s, Y_s⟩` exists for budget `f_size` and
/// reduction `d`: `X_s ⊆ X`, `Y_s ⊆ V \ X`, `(X \ X_s) ∪ Y_s` is a vertex
/// cover of rank `≥ f_size`, and `|Y_s| − |X_s| ≤ f_size − d`.
pub fn oracle_solution_pair(g: &Graph, x: &VertexSet, f_size: usize, d: usize) -> Result<bool> {
    Ok(find_solution_pair(g, x, f_size, d, &VertexSet::new())?.is_some())
}

/// Like [`oracle_solution_pair`], but returns the pair and never puts a
/// vertex of `keep` into `X_s`.
pub fn find_solution_pair(
    g: &Graph,
    x: &VertexSet,
    f_size: usize,
    d: usize,
    keep: &VertexSet,
) -> Result<Option<(VertexSet, VertexSet)>> {
    let bg = bit_graph_capped(g)?;
    if !bg.is_cover(mask_of(x)) || bg.min_cover_size(bg.full()) as usize != x.len() {
        return Err(Error::NotMinimumCover);
    }
    Ok(search_pairs(&bg, x, f_size, d, keep, &VertexSet::new()))
}

/// Decides an annotated instance: a solution pair for budget `k` with
/// `X_s ∩ X_L = ∅` and `X_R ⊆ X_s`. Unlike [`oracle_solution_pair`] it does not
/// insist that `X` be minimum.
pub fn oracle_annotated(a: &AnnotatedInstance) -> Result<bool> {
    let bg = bit_graph_capped(&a.base.g)?;
    if !bg.is_cover(mask_of(&a.x)) {
        return Err(Error::InvalidInstance("X is not a vertex cover".into()));
    }
    Ok(search_pairs(&bg, &a.x, a.base.k, a.base.d, &a.x_left, &a.x_right).is_some())
}

fn bit_graph_capped(g: &Graph) -> Result<BitGraph> {
    const CAP: usize = 40;
    if g.n() > CAP {
        return Err(too_large("vertex count", g.n(), CAP));
    }
    Ok(BitGraph::from_graph(g))
}

/// Solution pairs with `keep ∩ X_s = ∅` and `must ⊆ X_s`.
fn search_pairs(
    bg: &BitGraph,
    x: &VertexSet,
    f_size: usize,
    d: usize,
    keep: &VertexSet,
    must: &VertexSet,
) -> Option<(VertexSet, VertexSet)> {
    let xm = mask_of(x);
    let ym = bg.full() & !xm;
    let must_m = mask_of(must);
    let xs_choices: Vec<usize> = x.iter().copied().filter(|v| !keep.contains(v) && !must.contains(v)).collect();
    for sel in 0u64..(1 << xs_choices.len()) {
        let xs = members(sel).fold(must_m, |acc, i| acc | (1 << xs_choices[i]));
        if !bg.is_independent(xs) {
            continue;
        }
        // Y-neighbours of X_s must join Y_s for the cover property.
        let forced = bg.neighbors_of(xs) & ym;
        let slack = f_size as i64 - d as i64 + xs.count_ones() as i64 - forced.count_ones() as i64;
        if slack < 0 {
            continue;
        }
        // Rank of an induced subgraph never drops when a vertex is added, so
        // only maximal extensions need checking.
        let free: Vec<usize> = members(ym & !forced).collect();
        let extra = (slack as usize).min(free.len());
        let mut combo: Vec<usize> = (0..extra).collect();
        loop {
            let ys = combo.iter().fold(forced, |acc, &i| acc | (1 << free[i]));
            let enlarged = (xm & !xs) | ys;
            if bg.rank(enlarged) as usize >= f_size {
                let to_set = |m: u64| members(m).collect::<VertexSet>();
                return Some((to_set(xs), to_set(ys)));
            }
            if !next_combination(&mut combo, free.len()) {
                break;
            }
        }
    }
    None
}

/// Exhaustive constrained max-cut over all `2^|V|` partitions.
pub fn oracle_constrained_maxcut(inst: &MaxcutInstance) -> Result<bool> {
    const CAP: usize = 20;
    let g = &inst.base.g;
    if g.n() > CAP {
        return Err(too_large("vertex count", g.n(), CAP));
    }
    let bg = BitGraph::from_graph(g);
    let xm = mask_of(&inst.x);
    let (lm, rm) = (mask_of(&inst.x_left), mask_of(&inst.x_right));
    let slack = inst.base.k as i64 - inst.base.d as i64;
    for right in 0u64..(1 << g.n()) {
        if right & lm != 0 || rm & !right != 0 {
            continue;
        }
        let left = bg.full() & !right;
        let (rx, ry, lx, ly) = (right & xm, right & !xm, left & xm, left & !xm);
        if ry.count_ones() as i64 - rx.count_ones() as i64 > slack {
            continue;
        }
        if bg.neighbors_of(ly) & rx != 0 {
            continue;
        }
        let cut: EdgeSet = g
            .edges()
            .filter(|&(u, v)| {
                let inl = |w: VertexId| lx & (1 << w) != 0;
                let inr = |w: VertexId| ry & (1 << w) != 0;
                (inl(u) && inr(v)) || (inl(v) && inr(u))
            })
            .collect();
        if g.rank_edge_set(&cut)? >= inst.base.k {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exhaustive directed max-cut over all `2^|V|` partitions: no arc from right
/// to left, constraints respected, arc-set rank of the cut `≥ k`.
pub fn oracle_digraph_maxcut(inst: &DigraphMaxcutInstance) -> Result<bool> {
    const CAP: usize = 20;
    let n = inst.d.n();
    if n > CAP {
        return Err(too_large("vertex count", n, CAP));
    }
    let (lm, rm) = (mask_of(&inst.x_left), mask_of(&inst.x_right));
    for right in 0u64..(1 << n) {
        if right & lm != 0 || rm & !right != 0 {
            continue;
        }
        let is_right = |v: VertexId| right & (1 << v) != 0;
        if inst.d.arcs().iter().any(|&(a, b)| is_right(a) && !is_right(b)) {
            continue;
        }
        let cut = inst.d.arcs().iter().copied().filter(|&(a, b)| !is_right(a) && is_right(b));
        if rank_of_edge_list(cut) >= inst.k {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether some `ℓ` edges induce a forest (on their endpoints). Subsets of a
/// solution are solutions, so only `ℓ`-subsets are tried; at most `2^24` of them.
pub fn oracle_edge_induced_forest(inst: &EifInstance) -> Result<bool> {
    Ok(find_edge_induced_forest(inst)?.is_some())
}

/// The first (lexicographic) `ℓ`-set of edges inducing a forest, if any.
pub fn find_edge_induced_forest(inst: &EifInstance) -> Result<Option<EdgeSet>> {
    const CAP: u128 = 1 << 24;
    let edges: Vec<Edge> = inst.g.edges().collect();
    if inst.l > edges.len() {
        return Ok(None);
    }
    let subsets = (0..inst.l as u128).fold(1u128, |acc, i| acc * (edges.len() as u128 - i) / (i + 1));
    if subsets > CAP || inst.g.n() > 64 {
        return Err(Error::TooLarge(format!("{subsets} edge subsets exceed the oracle cap {CAP}")));
    }
    let bg = BitGraph::from_graph(&inst.g);
    let mut combo: Vec<usize> = (0..inst.l).collect();
    loop {
        let span = combo.iter().fold(0u64, |acc, &i| acc | (1 << edges[i].0) | (1 << edges[i].1));
        let induced_edges: u32 = members(span).map(|v| (bg.adj[v] & span).count_ones()).sum::<u32>() / 2;
        if induced_edges == bg.rank(span) {
            return Ok(Some(combo.iter().map(|&i| edges[i]).collect()));
        }
        if !next_combination(&mut combo, edges.len()) {
            return Ok(None);
        }
    }
}

/// Whether one vertex per class can be picked, pairwise non-adjacent.
/// Requires `|V| ≤ 15`.
pub fn oracle_multicolored_is(inst: &MisInstance) -> Result<bool> {
    Ok(find_multicolored_is(inst)?.is_some())
}

/// The first (lexicographic over classes) multicoloured independent set.
pub fn find_multicolored_is(inst: &MisInstance) -> Result<Option<Vec<VertexId>>> {
    const CAP: usize = 15;
    if inst.g.n() > CAP {
        return Err(too_large("vertex count", inst.g.n(), CAP));
    }
    fn pick(inst: &MisInstance, i: usize, chosen: &mut Vec<VertexId>) -> bool {
        if i == inst.classes.len() {
            return true;
        }
        for &v in &inst.classes[i] {
            if chosen.iter().all(|&u| !inst.g.has_edge(u, v) && u != v) {
                chosen.push(v);
                if pick(inst, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    Ok(pick(inst, 0, &mut chosen).then_some(chosen))
}

/// Canonical form of an edge list, for comparing witnesses.
pub fn canonical(f: &[Edge]) -> Vec<Edge> {
    let mut v: Vec<Edge> = f.iter().map(|&(a, b)| edge(a, b)).collect();
    v.sort_unstable();
    v.dedup();
    v
}
