//! The exact algorithm for Contraction(vc) with witness extraction.
//!
//! After the trivial gates (`d = 0`, `k < d`, `k` clamped to `rank(G)`), each
//! connected component is solved by case analysis:
//!
//! * `k = rank(G)`: contract a spanning forest; YES iff `vc(G) ≥ d`;
//! * `k < rank(G)`, `2d ≤ k`: YES iff `vc(G) > d`, witnessed by repeatedly
//!   contracting a shortest path between two cover vertices at distance ≤ 2;
//! * `d ≤ k < 2d`: either an easy YES (large odd cycle transversal, or a
//!   minimum cover of rank ≥ d), or a minimum cover `X` with `rank(X) < d`,
//!   after which the budget `k°` is raised from `d` to `k` and, for each `k°`,
//!   the chain below is run.
//!
//! The chain for a fixed `k°`:
//!
//! 1. guess how a spanning forest of `G[X]` meets the solution pair
//!    ([`enumerate_annotated`]); each guess fixes `X_L` (kept in the cover)
//!    and `X_R` (swapped out);
//! 2. delete `X_L`–`X_R` edges and contract `G[X_L]` ([`rr1_eliminate_x_edges`]);
//!    now `X` is independent and the problem is a constrained max-cut;
//! 3. turn budget slack `k − d` into pendant vertices ([`expand_k_to_d`]);
//! 4. use a matching saturating `X \ X_L` to force vertices left and drop
//!    unmatched `Y` vertices ([`rr2_matching_simplify`]);
//! 5. merge every matched pair into a digraph on `X` ([`maxcut_to_digraph`]),
//!    solved exactly by [`crate::digraph::dp_digraph_maxcut`].
//!
//! Each step records what its inverse needs in a [`ProvenanceChain`], so a
//! final partition is mapped back to a solution pair `⟨X_s, Y_s⟩` in the input
//! graph; the witness is a set of spanning-forest edges of `G[(X\X_s) ∪ Y_s]`.
//! Components are combined by a max-plus knapsack over budgets.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use crate::digraph::{condense, dp_digraph_maxcut, Digraph, DigraphMaxcutInstance};
use crate::error::{Error, Result};
use crate::exact::{
    matching_saturating, max_matching_from, min_vc_given_oct, min_vertex_cover, oct_at_most, vertex_cover_number,
    Bounded,
};
use crate::graph::{edge, rank_of_edge_list, ContractionMap, EdgeSet, Graph, VertexId, VertexSet};
use crate::instance::{verify_witness, Answer, Branch, CvcInstance, SolveStats, Verdict};

/// Solver switches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Extract and verify a witness for YES answers.
    pub witness: bool,
    /// Evaluate annotated instances on the rayon pool (results are identical).
    pub parallel: bool,
    /// Debug only: use the alternative reading `X_L = X_{L,F'} ∪ V(F_x \ F')`
    /// of the annotation step instead of `X_{L,F'} ∪ V(F')`.
    pub literal_annotation: bool,
    /// Record a text dump of every condensation handed to the DP.
    pub dump_condensations: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { witness: true, parallel: false, literal_annotation: false, dump_condensations: false }
    }
}

/// An annotated instance: a Contraction(vc) instance with a minimum vertex
/// cover `X`, vertices `X_L` that must stay in the cover and vertices `X_R`
/// that must be swapped out.
///
/// The same shape is read as a constrained max-cut instance once `X` is
/// independent: find `⟨V_L, V_R⟩` with `X_L ⊆ V_L`, `X_R ⊆ V_R`, no edge from
/// `V_L ∩ Y` to `V_R ∩ X`, `|V_R ∩ Y| − |V_R ∩ X| ≤ k − d` and
/// `rank(E(V_L ∩ X, V_R ∩ Y)) ≥ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedInstance {
    pub base: CvcInstance,
    pub x: VertexSet,
    pub x_left: VertexSet,
    pub x_right: VertexSet,
}

/// Constrained max-cut instances share the annotated shape.
pub type MaxcutInstance = AnnotatedInstance;

/// One transformation step, with the data its inverse needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    /// Edges between `X_L` and `X_R` deleted, a spanning forest of `G[X_L]` contracted.
    Rr1 { map: ContractionMap, deleted: EdgeSet, contracted: EdgeSet },
    /// Pendant vertices `base_n..` appended; `pendant_of[j]` is the `Y` vertex of pendant `base_n + j`.
    Expansion { base_n: usize, pendant_of: Vec<VertexId> },
    /// Unmatched `Y` vertices deleted; `back` maps new ids to old ones.
    Rr2 { back: Vec<VertexId>, added_left: VertexSet },
    /// Matched pairs merged: digraph vertex `i` is `x_of_d[i]`, matched to `mate_of_d[i]`.
    Digraph { x_of_d: Vec<VertexId>, mate_of_d: Vec<Option<VertexId>> },
}

/// The transformations applied to an annotated instance, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProvenanceChain {
    pub records: Vec<Record>,
}

impl ProvenanceChain {
    /// Maps the right side of a final partition back through every step,
    /// yielding `X_s ∪ Y_s` in the graph of the annotated instance.
    pub fn pull_back(&self, right: &VertexSet) -> VertexSet {
        let mut cur = right.clone();
        for rec in self.records.iter().rev() {
            cur = match rec {
                Record::Digraph { x_of_d, mate_of_d } => cur
                    .iter()
                    .flat_map(|&v| std::iter::once(x_of_d[v]).chain(mate_of_d[v]))
                    .collect(),
                Record::Rr2 { back, .. } => cur.iter().map(|&v| back[v]).collect(),
                Record::Expansion { base_n, .. } => cur.iter().copied().filter(|&v| v < *base_n).collect(),
                Record::Rr1 { map, .. } => {
                    cur.iter().flat_map(|&v| map.preimages[v].iter().copied()).collect()
                }
            };
        }
        cur
    }
}

/// Solves with default options.
pub fn solve(inst: &CvcInstance) -> Verdict {
    solve_with(inst, &SolveOptions::default())
}

/// Solves an arbitrary instance (any graph, any `k`, `d`).
pub fn solve_with(inst: &CvcInstance, opts: &SolveOptions) -> Verdict {
    let start = Instant::now();
    let mut verdict = solve_inner(inst, opts);
    verdict.stats.elapsed = start.elapsed();
    if let Some(w) = &verdict.witness {
        assert!(
            verify_witness(inst, w),
            "{}",
            Error::WitnessVerificationFailed(format!("witness {w:?} for k={} d={}", inst.k, inst.d))
        );
    }
    verdict
}

fn solve_inner(inst: &CvcInstance, opts: &SolveOptions) -> Verdict {
    let g = &inst.g;
    if inst.d == 0 {
        return Verdict::yes(opts.witness.then(EdgeSet::new)).with_branch(Branch::Trivial);
    }
    let k = inst.k.min(g.rank());
    if k < inst.d {
        return Verdict::no().with_branch(Branch::Trivial);
    }
    let comps: Vec<VertexSet> = g.connected_components().into_iter().filter(|c| c.len() > 1).collect();
    if comps.len() == 1 {
        let (sub, back) = g.induced(&comps[0]);
        let mut v = solve_connected_with(&CvcInstance::new(sub, k, inst.d), opts);
        v.witness = v.witness.map(|w| w.iter().map(|&(a, b)| edge(back[a], back[b])).collect());
        return v;
    }
    knapsack(g, &comps, k, inst.d, opts)
}

/// Per-component best reductions combined by max-plus convolution over budgets.
fn knapsack(g: &Graph, comps: &[VertexSet], k: usize, d: usize, opts: &SolveOptions) -> Verdict {
    let mut stats = SolveStats::default();
    // Contractions never lower the cover number by more than their count, so
    // in any solution every component spends at most `k − d` surplus edges.
    let slack = k - d;
    // best[c][κ] = (largest reduction with ≤ κ contractions in component c, witness),
    // exact whenever it is at least κ − slack.
    let mut best: Vec<Vec<(usize, EdgeSet)>> = Vec::new();
    for comp in comps {
        let (sub, back) = g.induced(comp);
        let cap = k.min(sub.rank());
        let vc = vertex_cover_number(&sub);
        let mut table = vec![(0usize, EdgeSet::new())];
        for kappa in 1..=cap {
            let (mut delta, mut wit) = table[kappa - 1].clone();
            // Reductions below κ − slack are never part of a solution, so the
            // search starts there (the carried value stays a valid lower bound).
            let mut probe = (delta + 1).max(kappa.saturating_sub(slack));
            while probe <= kappa.min(vc) {
                let v = solve_connected_with(&CvcInstance::new(sub.clone(), kappa, probe), opts);
                stats.absorb(&v.stats);
                if !v.answer.is_yes() {
                    break;
                }
                delta = probe;
                wit = v.witness.unwrap_or_default().iter().map(|&(a, b)| edge(back[a], back[b])).collect();
                probe += 1;
            }
            table.push((delta, wit));
        }
        best.push(table);
    }
    // dp[b] = (total reduction, chosen budget per component) using budget ≤ b.
    let mut dp: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new()); k + 1];
    for table in &best {
        let mut next: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new()); k + 1];
        for b in 0..=k {
            let mut choice: Option<(usize, Vec<usize>)> = None;
            for (kappa, (delta, _)) in table.iter().enumerate().take(b + 1) {
                let total = dp[b - kappa].0 + delta;
                if choice.as_ref().is_none_or(|c| total > c.0) {
                    let mut picks = dp[b - kappa].1.clone();
                    picks.push(kappa);
                    choice = Some((total, picks));
                }
            }
            next[b] = choice.expect("kappa = 0 always fits");
        }
        dp = next;
    }
    let (total, picks) = &dp[k];
    let mut verdict = if *total >= d {
        let witness = opts.witness.then(|| {
            picks.iter().zip(&best).flat_map(|(&kappa, table)| table[kappa].1.iter().copied()).collect()
        });
        Verdict::yes(witness)
    } else {
        Verdict::no()
    };
    verdict.stats = stats;
    verdict
}

/// Solves a connected instance with `1 ≤ d ≤ k ≤ rank(G)`.
pub fn solve_connected(inst: &CvcInstance) -> Verdict {
    solve_connected_with(inst, &SolveOptions::default())
}

pub fn solve_connected_with(inst: &CvcInstance, opts: &SolveOptions) -> Verdict {
    let (g, k, d) = (&inst.g, inst.k, inst.d);
    let rank = g.rank();
    debug_assert!(g.is_connected() && 1 <= d && d <= k && k <= rank);
    if k == rank {
        let vc = vertex_cover_number(g);
        let v = if vc >= d {
            let all: VertexSet = (0..g.n()).collect();
            Verdict::yes(opts.witness.then(|| g.spanning_forest(&all).expect("in range")))
        } else {
            Verdict::no()
        };
        return v.with_branch(Branch::KEqRank);
    }
    if 2 * d <= k {
        let vc = vertex_cover_number(g);
        let v = if vc > d { Verdict::yes(opts.witness.then(|| short_path_witness(g, d))) } else { Verdict::no() };
        return v.with_branch(Branch::TwoDLeK);
    }
    let x = match preprocess_low_rank_cover(inst) {
        Preprocessed::Yes(f) => return Verdict::yes(opts.witness.then_some(f)).with_branch(Branch::Pipeline),
        Preprocessed::Cover(x) => x,
    };
    let ctx = Context::new(opts);
    // Raising the budget one step at a time means the first success uses the
    // smallest workable budget.
    for budget in d..=k {
        if let Some(f) = engine(&ctx, g, budget, d, &x) {
            let mut v = Verdict::yes(opts.witness.then_some(f)).with_branch(Branch::Pipeline);
            v.stats = ctx.stats(Branch::Pipeline);
            return v;
        }
    }
    let mut v = Verdict::no();
    v.stats = ctx.stats(Branch::Pipeline);
    v
}

/// Repeatedly contracts a shortest path (one or two edges) joining two
/// vertices of a minimum cover; each round lowers the cover number by at least
/// one, so at most `d` rounds (`2d ≤ k` edges) are needed.
fn short_path_witness(g: &Graph, d: usize) -> EdgeSet {
    let vc = vertex_cover_number(g);
    let mut f = EdgeSet::new();
    loop {
        let (h, map) = g.contract_edges(&f).expect("edges of g");
        let cover = min_vertex_cover(&h).cover;
        if cover.len() + d <= vc {
            break;
        }
        let path = cover
            .iter()
            .find_map(|&a| {
                // Nearest other cover vertex within distance two.
                if let Some(&b) = h.neighbors(a).iter().find(|b| cover.contains(b)) {
                    return Some(vec![(a, b)]);
                }
                h.neighbors(a).iter().find_map(|&m| {
                    h.neighbors(m).iter().find(|&&b| b != a && cover.contains(&b)).map(|&b| vec![(a, m), (m, b)])
                })
            })
            .expect("a connected graph with cover number ≥ 2 has two cover vertices at distance ≤ 2");
        for (a, b) in path {
            let e = g
                .edges()
                .find(|&(u, v)| {
                    (map.forward[u], map.forward[v]) == (a, b) || (map.forward[u], map.forward[v]) == (b, a)
                })
                .expect("quotient edges lift");
            f.insert(e);
        }
    }
    f
}

/// Result of [`preprocess_low_rank_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preprocessed {
    /// The instance is YES; the set is a witness.
    Yes(EdgeSet),
    /// A minimum vertex cover of rank `< d`.
    Cover(VertexSet),
}

/// For `d ≤ k < 2d`: either a direct YES or a minimum cover of rank below `d`.
///
/// If `oct(G) > k`, every minimum cover has rank `> k`; otherwise a minimum
/// cover is computed from a transversal. A cover of rank `≥ d` yields a YES by
/// contracting `d` edges of its spanning forest.
pub fn preprocess_low_rank_cover(inst: &CvcInstance) -> Preprocessed {
    let g = &inst.g;
    let x = match oct_at_most(g, inst.k) {
        Bounded::Exceeds => min_vertex_cover(g).cover,
        Bounded::Within(t) => min_vc_given_oct(g, &t).expect("valid transversal").cover,
    };
    let forest = g.spanning_forest(&x).expect("in range");
    if forest.len() >= inst.d {
        Preprocessed::Yes(forest.into_iter().take(inst.d).collect())
    } else {
        Preprocessed::Cover(x)
    }
}

/// Shared counters for one `solve_connected` call.
struct Context<'a> {
    opts: &'a SolveOptions,
    annotated: AtomicUsize,
    expansion: AtomicUsize,
    dp_runs: AtomicUsize,
    dp_states: AtomicUsize,
    nodes: AtomicUsize,
    condensations: Mutex<Vec<String>>,
}

impl<'a> Context<'a> {
    fn new(opts: &'a SolveOptions) -> Self {
        Self {
            opts,
            annotated: AtomicUsize::new(0),
            expansion: AtomicUsize::new(0),
            dp_runs: AtomicUsize::new(0),
            dp_states: AtomicUsize::new(0),
            nodes: AtomicUsize::new(0),
            condensations: Mutex::new(Vec::new()),
        }
    }

    fn stats(&self, branch: Branch) -> SolveStats {
        SolveStats {
            branch: Some(branch),
            annotated_instances: self.annotated.load(Ordering::Relaxed),
            expansion_instances: self.expansion.load(Ordering::Relaxed),
            dp_runs: self.dp_runs.load(Ordering::Relaxed),
            dp_states: self.dp_states.load(Ordering::Relaxed),
            nodes: self.nodes.load(Ordering::Relaxed),
            elapsed: Default::default(),
            condensations: self.condensations.lock().expect("not poisoned").clone(),
        }
    }
}

/// Decides `(G, budget, d)` for connected `G` with minimum cover `x`
/// (`rank(x) < d ≤ budget < rank(G)`); returns a witness on YES.
fn engine(ctx: &Context, g: &Graph, budget: usize, d: usize, x: &VertexSet) -> Option<EdgeSet> {
    let base = CvcInstance::new(g.clone(), budget, d);
    let annotated = enumerate_annotated_with(&base, x, ctx.opts.literal_annotation);
    ctx.annotated.fetch_add(annotated.len(), Ordering::Relaxed);
    let found = if ctx.opts.parallel {
        annotated.par_iter().find_map_first(|a| solve_annotated(ctx, a))
    } else {
        annotated.iter().find_map(|a| solve_annotated(ctx, a))
    }?;
    Some(witness_from_pair(g, x, budget, d, &found).expect("pair from a YES chain is a solution pair"))
}

/// Runs the reduction chain on one annotated instance; on YES returns
/// `X_s ∪ Y_s` in the annotated instance's graph.
fn solve_annotated(ctx: &Context, a: &AnnotatedInstance) -> Option<VertexSet> {
    let (m, rec1) = rr1_eliminate_x_edges(a)?;
    let mut chain = ProvenanceChain { records: vec![rec1] };
    let found = expand_k_to_d_visit(&m, &mut |inst, rec| {
        ctx.nodes.fetch_add(1, Ordering::Relaxed);
        if rec.is_some() {
            ctx.expansion.fetch_add(1, Ordering::Relaxed);
        }
        let (reduced, rec2) = rr2_matching_simplify(inst)?;
        let (dinst, rec3) = maxcut_to_digraph(&reduced);
        if ctx.opts.dump_condensations {
            ctx.condensations.lock().expect("not poisoned").push(condense(&dinst.d).to_text());
        }
        let out = dp_digraph_maxcut(&dinst);
        if out.table.is_some() {
            ctx.dp_runs.fetch_add(1, Ordering::Relaxed);
            ctx.dp_states.fetch_add(out.stats.states, Ordering::Relaxed);
        }
        let p = out.partition?;
        let local = ProvenanceChain {
            records: rec.into_iter().chain([rec2, rec3]).collect(),
        };
        Some(local.pull_back(&p.right))
    })?;
    chain.records.truncate(1);
    Some(chain.pull_back(&found))
}

/// Builds `F`: up to `budget` spanning-forest edges of `G[(X\X_s) ∪ Y_s]`,
/// checking the count suffices and recomputing the cover number.
pub fn witness_from_pair(g: &Graph, x: &VertexSet, budget: usize, d: usize, pair: &VertexSet) -> Result<EdgeSet> {
    let xs: VertexSet = pair.intersection(x).copied().collect();
    let ys: VertexSet = pair.difference(x).copied().collect();
    let enlarged: VertexSet = x.difference(&xs).chain(ys.iter()).copied().collect();
    if !g.is_vertex_cover(&enlarged) {
        return Err(Error::WitnessVerificationFailed("enlarged set is not a cover".into()));
    }
    let forest = g.spanning_forest(&enlarged)?;
    let needed = d + ys.len().saturating_sub(xs.len());
    let f: EdgeSet = forest.into_iter().take(budget).collect();
    if f.len() < needed {
        return Err(Error::WitnessVerificationFailed(format!(
            "forest of size {} cannot pay for excess {}",
            f.len(),
            needed
        )));
    }
    if !verify_witness(&CvcInstance::new(g.clone(), budget, d), &f) {
        return Err(Error::WitnessVerificationFailed("cover number did not drop by d".into()));
    }
    Ok(f)
}

/// Annotated instances for every way a spanning forest `F_x` of `G[X]` can
/// meet a solution pair: each forest edge is kept (both ends in `X_L`) or
/// split (one end in `X_L`, the other in `X_R`). Guesses with a non-independent
/// `X_R` are dropped. At most `3^|F_x|` instances, in canonical order.
pub fn enumerate_annotated(inst: &CvcInstance, x: &VertexSet) -> Vec<AnnotatedInstance> {
    enumerate_annotated_with(inst, x, false)
}

/// Like [`enumerate_annotated`]; `literal` selects the alternative reading
/// described on [`SolveOptions::literal_annotation`].
pub fn enumerate_annotated_with(inst: &CvcInstance, x: &VertexSet, literal: bool) -> Vec<AnnotatedInstance> {
    let forest: Vec<(VertexId, VertexId)> = inst.g.spanning_forest(x).expect("in range").into_iter().collect();
    let total = 3usize.pow(forest.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut left = VertexSet::new();
        let mut right = VertexSet::new();
        let mut c = code;
        for &(u, v) in &forest {
            let digit = c % 3;
            c /= 3;
            match digit {
                0 => {
                    if !literal {
                        left.extend([u, v]);
                    }
                }
                1 => {
                    left.insert(u);
                    right.insert(v);
                    if literal {
                        left.insert(v);
                    }
                }
                _ => {
                    left.insert(v);
                    right.insert(u);
                    if literal {
                        left.insert(u);
                    }
                }
            }
        }
        if !left.is_disjoint(&right) || !inst.g.is_independent_set(&right) {
            continue;
        }
        out.push(AnnotatedInstance { base: inst.clone(), x: x.clone(), x_left: left, x_right: right });
    }
    out
}

/// Deletes the edges between `X_L` and `X_R` and contracts a spanning forest
/// of `G[X_L]`, lowering `k` and `d` by its size. Returns `None` when the
/// budgets cannot pay for the contraction (a NO).
pub fn rr1_eliminate_x_edges(a: &AnnotatedInstance) -> Option<(AnnotatedInstance, Record)> {
    let g = &a.base.g;
    let deleted: EdgeSet = g
        .edges()
        .filter(|&(u, v)| {
            (a.x_left.contains(&u) && a.x_right.contains(&v)) || (a.x_left.contains(&v) && a.x_right.contains(&u))
        })
        .collect();
    let g1 = g.without_edges(&deleted);
    let contracted = g1.spanning_forest(&a.x_left).expect("in range");
    if contracted.len() > a.base.d {
        return None;
    }
    let (g2, map) = g1.contract_edges(&contracted).expect("forest edges exist");
    let image = |s: &VertexSet| -> VertexSet { s.iter().map(|&v| map.forward[v]).collect() };
    let reduced = AnnotatedInstance {
        base: CvcInstance::new(g2, a.base.k - contracted.len(), a.base.d - contracted.len()),
        x: image(&a.x),
        x_left: image(&a.x_left),
        x_right: image(&a.x_right),
    };
    Some((reduced, Record::Rr1 { map, deleted, contracted }))
}

/// Outcome of [`expand_k_to_d`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    /// Some set of `Y` vertices alone is a solution; holds `V_R`.
    Yes(VertexSet),
    /// Equivalent `k = d` instances (the original is YES iff one of them is).
    Instances(Vec<(MaxcutInstance, Option<Record>)>),
}

/// Materialises every instance produced by the `k > d` expansion.
pub fn expand_k_to_d(m: &MaxcutInstance) -> Expansion {
    let mut all = Vec::new();
    let yes = expand_k_to_d_visit(m, &mut |inst, rec| {
        all.push((inst.clone(), rec));
        None
    });
    match yes {
        Some(r) => Expansion::Yes(r),
        None => Expansion::Instances(all),
    }
}

/// Streams the expansion of a max-cut instance (`X` independent) into `k = d`
/// instances. For every `q ≤ k − d` and every `q`-set `E ⊆ Y` (the `Y`
/// vertices on the right beyond the matched images of `V_R ∩ X`), one pendant
/// `X`-vertex is attached to each `y ∈ E` and forced right, and the matching
/// partner of each `y ∈ E` is forced left. When `E` with its neighbourhood
/// already has rank `≥ k` and `X_R = ∅`, `V_R = E` is a solution outright.
///
/// `visit` receives each instance with its record (`None` for `q = 0`, which
/// is the input with `k` lowered to `d`) and may return a pulled-back `V_R`
/// to stop.
fn expand_k_to_d_visit(
    m: &MaxcutInstance,
    visit: &mut dyn FnMut(&MaxcutInstance, Option<Record>) -> Option<VertexSet>,
) -> Option<VertexSet> {
    let g = &m.base.g;
    let (k, d) = (m.base.k, m.base.d);
    let n = g.n();
    let free_x: Vec<VertexId> = m.x.iter().copied().filter(|v| !m.x_left.contains(v)).collect();
    let not_x = |v: VertexId| !m.x.contains(&v);
    let mates = max_matching_from(g, &free_x, &not_x);
    let mut partner = vec![None; n];
    for &x in &free_x {
        // After the first reduction rule `X \ X_L` is always saturated; only
        // the debug annotation can get here without, and then has no solution
        // along this route.
        let y = mates[x]?;
        partner[y] = Some(x);
    }
    // With no pendants the instance is the input with its budget lowered to d.
    let plain = MaxcutInstance { base: CvcInstance::new(g.clone(), d, d), ..m.clone() };
    if let Some(r) = visit(&plain, None) {
        return Some(r);
    }
    let ys: Vec<VertexId> = (0..n).filter(|v| !m.x.contains(v)).collect();
    for q in 1..=(k - d) {
        let mut combo: Vec<usize> = (0..q).collect();
        if q > ys.len() {
            break;
        }
        loop {
            let e: Vec<VertexId> = combo.iter().map(|&i| ys[i]).collect();
            if let Some(r) = expansion_for(m, &e, &partner, visit) {
                return Some(r);
            }
            // Next combination in lexicographic order.
            let mut i = q;
            while i > 0 && combo[i - 1] == ys.len() - q + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..q {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    None
}

fn expansion_for(
    m: &MaxcutInstance,
    e: &[VertexId],
    partner: &[Option<VertexId>],
    visit: &mut dyn FnMut(&MaxcutInstance, Option<Record>) -> Option<VertexSet>,
) -> Option<VertexSet> {
    let g = &m.base.g;
    let (k, d) = (m.base.k, m.base.d);
    let q = e.len();
    let e_set: VertexSet = e.iter().copied().collect();
    let nbrs = g.neighborhood(&e_set);
    let rank = rank_of_edge_list(e.iter().flat_map(|&y| g.neighbors(y).iter().map(move |&x| (y, x))));
    if rank >= k && m.x_right.is_empty() {
        return Some(e_set);
    }
    let partners: VertexSet = e.iter().filter_map(|&y| partner[y]).collect();
    if !partners.is_disjoint(&m.x_right) {
        return None;
    }
    let forced_left: VertexSet =
        nbrs.iter().copied().filter(|v| m.x_left.contains(v) || partners.contains(v)).collect();
    let forced_right: VertexSet = nbrs.intersection(&m.x_right).copied().collect();
    let free: Vec<VertexId> = nbrs
        .iter()
        .copied()
        .filter(|v| !forced_left.contains(v) && !forced_right.contains(v))
        .collect();
    // With rank ≥ k the neighbourhood is unbounded; the split of `N(E)` is then
    // left to the later stages instead of being guessed.
    let guesses: u64 = if rank >= k { 1 } else { 1u64 << free.len() };
    let base_n = g.n();
    let pendant_edges: Vec<(VertexId, VertexId)> = e.iter().enumerate().map(|(j, &y)| (base_n + j, y)).collect();
    let expanded = g.extended(q, &pendant_edges);
    let pendants: VertexSet = (base_n..base_n + q).collect();
    for mask in 0..guesses {
        let mut x_left = m.x_left.clone();
        x_left.extend(forced_left.iter().copied());
        let mut x_right = m.x_right.clone();
        x_right.extend(forced_right.iter().copied());
        x_right.extend(pendants.iter().copied());
        if rank < k {
            for (i, &v) in free.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    x_right.insert(v);
                } else {
                    x_left.insert(v);
                }
            }
        }
        let inst = MaxcutInstance {
            base: CvcInstance::new(expanded.clone(), d + q, d + q),
            x: m.x.iter().copied().chain(pendants.iter().copied()).collect(),
            x_left,
            x_right,
        };
        let rec = Record::Expansion { base_n, pendant_of: e.to_vec() };
        if let Some(r) = visit(&inst, Some(rec)) {
            return Some(r);
        }
    }
    None
}

/// For `k = d`: with a matching `M` saturating `X \ X_L`, any solution has
/// `V_R ∩ Y = M(V_R ∩ X)`. Hence a vertex with a neighbour outside `M(X \ X_L)`
/// must stay left, and such neighbours can be dropped once all their
/// neighbours are left. Returns `None` (a NO) if a forced-right vertex is
/// forced left, or if no matching saturates `X \ X_L`.
pub fn rr2_matching_simplify(m: &MaxcutInstance) -> Option<(MaxcutInstance, Record)> {
    let g = &m.base.g;
    debug_assert_eq!(m.base.k, m.base.d);
    let candidates: VertexSet = m.x.difference(&m.x_left).copied().collect();
    let matching = matching_saturating(g, &candidates)?;
    let mut mate = vec![None; g.n()];
    for &(a, b) in &matching {
        let (x, y) = if m.x.contains(&a) { (a, b) } else { (b, a) };
        mate[x] = Some(y);
    }
    let mut x_left = m.x_left.clone();
    let mut added_left = VertexSet::new();
    let mut matched_y: VertexSet = candidates.iter().filter_map(|&x| mate[x]).collect();
    let mut queue: VecDeque<VertexId> = candidates.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        if x_left.contains(&x) {
            continue;
        }
        if g.neighbors(x).iter().all(|y| matched_y.contains(y)) {
            continue;
        }
        if m.x_right.contains(&x) {
            return None;
        }
        x_left.insert(x);
        added_left.insert(x);
        // Only the debug annotation can leave a candidate unmatched here.
        let freed = mate[x]?;
        matched_y.remove(&freed);
        // Every X-neighbour of the freed vertex must be re-examined.
        queue.extend(g.neighbors(freed).iter().copied().filter(|v| m.x.contains(v) && !x_left.contains(v)));
    }
    let keep: VertexSet = m.x.iter().copied().chain(matched_y.iter().copied()).collect();
    let (h, back) = g.induced(&keep);
    let fwd = |v: VertexId| back.binary_search(&v).expect("kept");
    let reduced = MaxcutInstance {
        base: CvcInstance::new(h, m.base.k, m.base.d),
        x: m.x.iter().map(|&v| fwd(v)).collect(),
        x_left: x_left.iter().map(|&v| fwd(v)).collect(),
        x_right: m.x_right.iter().map(|&v| fwd(v)).collect(),
    };
    Some((reduced, Record::Rr2 { back, added_left }))
}

/// Orients every edge from `X` to `Y` and merges each matched pair `(x, y)`
/// into `x`: an arc `x1 → y` becomes `x1 → x`. The digraph lives on `X`.
///
/// Requires the output of [`rr2_matching_simplify`] (every `Y` vertex matched).
pub fn maxcut_to_digraph(m: &MaxcutInstance) -> (DigraphMaxcutInstance, Record) {
    let g = &m.base.g;
    let x_of_d: Vec<VertexId> = m.x.iter().copied().collect();
    let id = |v: VertexId| x_of_d.binary_search(&v).expect("X vertex");
    let candidates: VertexSet = m.x.difference(&m.x_left).copied().collect();
    let matching = matching_saturating(g, &candidates).expect("saturating matching survives the reduction");
    let mut mate_of_d = vec![None; x_of_d.len()];
    for &(a, b) in &matching {
        let (x, y) = if m.x.contains(&a) { (a, b) } else { (b, a) };
        mate_of_d[id(x)] = Some(y);
    }
    let mut arcs = Vec::new();
    for (i, mate) in mate_of_d.iter().enumerate() {
        let Some(y) = *mate else { continue };
        for &x1 in g.neighbors(y) {
            if x1 != x_of_d[i] {
                arcs.push((id(x1), i));
            }
        }
    }
    let inst = DigraphMaxcutInstance {
        d: Digraph::new(x_of_d.len(), arcs).expect("no loops by construction"),
        x_left: m.x_left.iter().map(|&v| id(v)).collect(),
        x_right: m.x_right.iter().map(|&v| id(v)).collect(),
        k: m.base.k,
    };
    (inst, Record::Digraph { x_of_d, mate_of_d })
}

/// Maps a final right side back through `chain` and builds the witness in the
/// annotated instance's (original, connected) graph.
pub fn extract_witness(
    original: &AnnotatedInstance,
    chain: &ProvenanceChain,
    right: &VertexSet,
) -> Result<EdgeSet> {
    let pair = chain.pull_back(right);
    witness_from_pair(&original.base.g, &original.x, original.base.k, original.base.d, &pair)
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        Answer::from_bool(b)
    }
}
