//! Directed multigraphs, strongly-connected-component condensation, and an
//! exact dynamic program for the constrained directed max-cut problem:
//!
//! > find `⟨V_L, V_R⟩` with no arc from `V_R` to `V_L`, `X_L ⊆ V_L`,
//! > `X_R ⊆ V_R`, and `rank(A(V_L, V_R)) ≥ k`.
//!
//! The rank of an arc set is the rank of the undirected graph formed by those
//! arcs on original vertices of `D` (number of endpoints minus number of
//! components). For the cut arcs of a partition this equals the rank of the
//! corresponding undirected cut edges in the bipartite graph the digraph was
//! built from.
//!
//! Since no arc may go right-to-left, every strongly connected component lies
//! on one side; the DP therefore runs over a topological order `σ` of the
//! condensation, processing suffixes `U^i = σ[i..]` from the back. Its state
//! at position `i` is the side of every *boundary* component (one that
//! receives an arc from the prefix) together with the way the right-side
//! boundary heads are grouped into components of the cut graph built so far.
//! That grouping is exactly what determines future rank gains, so keeping the
//! best rank per state is exact.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::graph::{rank_of_edge_list, Partition, VertexId, VertexSet};

/// A directed multigraph: parallel and anti-parallel arcs are allowed, loops are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(VertexId, VertexId)>) -> Result<Self> {
        for &(a, b) in &arcs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
        }
        Ok(Self { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs in insertion order, with multiplicity.
    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    fn out_lists(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.n];
        for &(a, b) in &self.arcs {
            out[a].push(b);
        }
        out
    }

    /// Text dump: `p <n> <arcs>` then one `a <u> <v>` line per arc (1-based).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p {} {}", self.n, self.arcs.len());
        for &(a, b) in &self.arcs {
            let _ = writeln!(s, "a {} {}", a + 1, b + 1);
        }
        s
    }
}

/// Rank of the cut arcs `A(V_L, V_R)` for a side assignment (`true` = right).
pub fn cut_rank(d: &Digraph, right: &[bool]) -> usize {
    rank_of_edge_list(d.arcs.iter().copied().filter(|&(a, b)| !right[a] && right[b]))
}

/// Whether no arc goes from the right side to the left side.
pub fn is_closed_cut(d: &Digraph, right: &[bool]) -> bool {
    d.arcs.iter().all(|&(a, b)| !(right[a] && !right[b]))
}

/// The condensation of a digraph into its strongly connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    /// Acyclic digraph on components; arcs between distinct components are
    /// kept with multiplicity.
    pub dag: Digraph,
    /// `psi[v]` is the component of original vertex `v`.
    pub psi: Vec<VertexId>,
    /// Members of each component, sorted.
    pub members: Vec<Vec<VertexId>>,
    /// Topological order of the components.
    pub order: Vec<VertexId>,
}

impl Condensation {
    /// Text dump of the DAG plus `c psi <v> <component>` provenance lines.
    pub fn to_text(&self) -> String {
        let mut s = self.dag.to_text();
        for (v, &c) in self.psi.iter().enumerate() {
            let _ = writeln!(s, "c psi {} {}", v + 1, c + 1);
        }
        s
    }
}

/// Condenses strongly connected components. Components are numbered by their
/// smallest member; the order prefers the lowest-numbered ready component.
pub fn condense(d: &Digraph) -> Condensation {
    let mut pg = petgraph::graph::DiGraph::<(), ()>::with_capacity(d.n, d.arcs.len());
    for _ in 0..d.n {
        pg.add_node(());
    }
    for &(a, b) in &d.arcs {
        pg.add_edge((a as u32).into(), (b as u32).into(), ());
    }
    let mut class = vec![0; d.n];
    for (ci, comp) in petgraph::algo::tarjan_scc(&pg).into_iter().enumerate() {
        for node in comp {
            class[node.index()] = ci;
        }
    }
    let map = crate::graph::ContractionMap::from_classes(&class);
    let psi = map.forward;
    let arcs: Vec<_> =
        d.arcs.iter().map(|&(a, b)| (psi[a], psi[b])).filter(|&(a, b)| a != b).collect();
    let dag = Digraph { n: map.preimages.len(), arcs };
    let order = priority_topological_order(&dag, &vec![1; dag.n]);
    Condensation { dag, psi, members: map.preimages, order }
}

/// Kahn's algorithm choosing the ready vertex with the smallest `(rank, id)`.
fn priority_topological_order(dag: &Digraph, rank: &[u8]) -> Vec<VertexId> {
    let out = dag.out_lists();
    let mut indeg = vec![0usize; dag.n];
    for &(_, b) in &dag.arcs {
        indeg[b] += 1;
    }
    let mut ready: std::collections::BTreeSet<(u8, VertexId)> =
        (0..dag.n).filter(|&v| indeg[v] == 0).map(|v| (rank[v], v)).collect();
    let mut order = Vec::with_capacity(dag.n);
    while let Some(first) = ready.pop_first() {
        let v = first.1;
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert((rank[w], w));
            }
        }
    }
    assert_eq!(order.len(), dag.n, "condensation must be acyclic");
    order
}

/// An instance of constrained directed max-cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphMaxcutInstance {
    pub d: Digraph,
    pub x_left: VertexSet,
    pub x_right: VertexSet,
    pub k: usize,
}

/// Whether `right` is a valid solution of `inst`.
pub fn is_valid_digraph_cut(inst: &DigraphMaxcutInstance, right: &[bool]) -> bool {
    inst.x_left.iter().all(|&v| !right[v])
        && inst.x_right.iter().all(|&v| right[v])
        && is_closed_cut(&inst.d, right)
        && cut_rank(&inst.d, right) >= inst.k
}

/// Scans the splits `⟨σ[..i], σ[i..]⟩` of the condensation order and returns
/// the first one that respects the constraints and already has cut rank ≥ k.
pub fn prefix_cut_check(inst: &DigraphMaxcutInstance, c: &Condensation) -> Option<Partition> {
    prefix_cut_scan(inst, c, &c.order)
}

fn prefix_cut_scan(inst: &DigraphMaxcutInstance, c: &Condensation, order: &[VertexId]) -> Option<Partition> {
    let mut right = vec![true; inst.d.n];
    for i in 0..=order.len() {
        if i > 0 {
            for &v in &c.members[order[i - 1]] {
                right[v] = false;
            }
        }
        if inst.x_left.iter().all(|&v| !right[v])
            && inst.x_right.iter().all(|&v| right[v])
            && cut_rank(&inst.d, &right) >= inst.k
        {
            return Some(partition_from_sides(&right));
        }
    }
    None
}

fn partition_from_sides(right: &[bool]) -> Partition {
    let mut p = Partition::default();
    for (v, &r) in right.iter().enumerate() {
        if r {
            p.right.insert(v);
        } else {
            p.left.insert(v);
        }
    }
    p
}

/// Counters reported by the DP.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DpStats {
    /// Answered by propagation conflict (immediate NO).
    pub conflict: bool,
    /// Answered by the prefix-cut scan.
    pub prefix_hit: bool,
    /// Total number of table entries created.
    pub states: usize,
    /// Largest boundary (number of boundary components) seen by the DP.
    pub max_boundary: usize,
    /// Largest number of tracked boundary heads seen by the DP.
    pub max_heads: usize,
}

/// One table entry: the key and the best rank reachable for it, with a
/// back-pointer to the entry of the next layer it was built from.
#[derive(Clone, Debug)]
pub struct DpEntry {
    /// Side (`true` = right) of every boundary component, in boundary order.
    pub boundary_sides: Vec<bool>,
    /// Component labels of the right-side boundary heads, in head order.
    pub groups: Vec<u8>,
    /// Best cut rank within the suffix, capped at `k`.
    pub rank: usize,
    /// Index into the next layer (`None` for the empty suffix).
    pub prev: Option<usize>,
    /// Side chosen for the component at this position.
    pub placed_right: bool,
}

/// The filled table: `layers[i]` holds the entries for suffix `σ[i..]`.
#[derive(Clone, Debug)]
pub struct DpTable {
    pub order: Vec<VertexId>,
    pub boundary: Vec<Vec<VertexId>>,
    pub heads: Vec<Vec<VertexId>>,
    pub layers: Vec<Vec<DpEntry>>,
}

impl DpTable {
    /// Side assignment (`true` = right) of the components of suffix `σ[i..]`
    /// represented by entry `idx` of layer `i`; earlier components are `None`.
    pub fn suffix_sides(&self, i: usize, idx: usize) -> Vec<Option<bool>> {
        let n = self.order.len();
        let mut sides = vec![None; n];
        let (mut layer, mut at) = (i, Some(idx));
        while layer < n {
            let e = &self.layers[layer][at.expect("chain continues")];
            sides[self.order[layer]] = Some(e.placed_right);
            at = e.prev;
            layer += 1;
        }
        sides
    }
}

/// Outcome of [`dp_digraph_maxcut`].
#[derive(Clone, Debug)]
pub struct DigraphOutcome {
    pub partition: Option<Partition>,
    pub stats: DpStats,
    /// The table, when the DP actually ran.
    pub table: Option<DpTable>,
    /// The condensation and propagated per-component constraints
    /// (0 = left, 1 = free, 2 = right), when no conflict occurred.
    pub condensation: Condensation,
    pub forced: Vec<u8>,
}

/// Decides constrained directed max-cut exactly and returns a witness partition.
pub fn dp_digraph_maxcut(inst: &DigraphMaxcutInstance) -> DigraphOutcome {
    let c = condense(&inst.d);
    let n = c.dag.n;
    let mut stats = DpStats::default();

    // Lift constraints to components, then close X_L under predecessors and
    // X_R under successors (an arc into a left vertex drags its tail left; an
    // arc out of a right vertex drags its head right).
    let mut forced = vec![1u8; n];
    let mut conflict = false;
    for &v in &inst.x_left {
        forced[c.psi[v]] = 0;
    }
    for &v in &inst.x_right {
        if forced[c.psi[v]] == 0 {
            conflict = true;
        }
        forced[c.psi[v]] = 2;
    }
    let out = c.dag.out_lists();
    let mut inn = vec![Vec::new(); n];
    for &(a, b) in &c.dag.arcs {
        inn[b].push(a);
    }
    for (target, adj) in [(0u8, &inn), (2u8, &out)] {
        let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| forced[v] == target).collect();
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if forced[w] == target {
                    continue;
                }
                if forced[w] != 1 {
                    conflict = true;
                    continue;
                }
                forced[w] = target;
                queue.push_back(w);
            }
        }
    }
    if conflict {
        stats.conflict = true;
        return DigraphOutcome { partition: None, stats, table: None, condensation: c, forced };
    }

    // σ: forced-left components first, forced-right last.
    let order = priority_topological_order(&c.dag, &forced);
    if let Some(p) = prefix_cut_scan(inst, &c, &order) {
        stats.prefix_hit = true;
        return DigraphOutcome { partition: Some(p), stats, table: None, condensation: c, forced };
    }

    // Arcs that can ever be cut arcs: between components, head not forced left
    // and tail not forced right.
    let live: Vec<(VertexId, VertexId)> = inst
        .d
        .arcs
        .iter()
        .copied()
        .filter(|&(a, b)| c.psi[a] != c.psi[b] && forced[c.psi[b]] != 0 && forced[c.psi[a]] != 2)
        .collect();
    let mut pos = vec![0; n];
    for (i, &u) in order.iter().enumerate() {
        pos[u] = i;
    }
    // heads[i]: D-vertices in σ[i..] hit by a live arc from σ[..i].
    let mut heads: Vec<Vec<VertexId>> = vec![Vec::new(); n + 1];
    for i in 0..=n {
        let mut h: Vec<VertexId> = live
            .iter()
            .filter(|&&(a, b)| pos[c.psi[a]] < i && pos[c.psi[b]] >= i)
            .map(|&(_, b)| b)
            .collect();
        h.sort_unstable();
        h.dedup();
        heads[i] = h;
    }
    let boundary: Vec<Vec<VertexId>> = heads
        .iter()
        .map(|h| {
            let mut b: Vec<VertexId> = h.iter().map(|&v| c.psi[v]).collect();
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();
    let mut live_out: Vec<Vec<VertexId>> = vec![Vec::new(); inst.d.n];
    for &(a, b) in &live {
        live_out[a].push(b);
    }

    let k = inst.k;
    let mut layers: Vec<Vec<DpEntry>> = vec![Vec::new(); n + 1];
    layers[n].push(DpEntry { boundary_sides: vec![], groups: vec![], rank: 0, prev: None, placed_right: false });
    for i in (0..n).rev() {
        let u = order[i];
        let next_heads = &heads[i + 1];
        let next_boundary = &boundary[i + 1];
        let mut index: HashMap<(Vec<bool>, Vec<u8>), usize> = HashMap::new();
        let mut layer: Vec<DpEntry> = Vec::new();
        for (pi, prev) in layers[i + 1].iter().enumerate() {
            let side_of = |comp: VertexId| -> Option<bool> {
                next_boundary.binary_search(&comp).ok().map(|j| prev.boundary_sides[j])
            };
            for place_right in [false, true] {
                if (place_right && forced[u] == 0) || (!place_right && forced[u] == 2) {
                    continue;
                }
                // Current grouping of right-side heads, as a union-find over
                // positions in `next_heads` (left-side heads are ignored).
                let mut uf = UnionFind::<usize>::new(next_heads.len());
                let mut right_head = vec![false; next_heads.len()];
                {
                    let mut first_of_group: HashMap<u8, usize> = HashMap::new();
                    let mut gi = 0;
                    for (hi, &h) in next_heads.iter().enumerate() {
                        if side_of(c.psi[h]) == Some(true) {
                            right_head[hi] = true;
                            let g = prev.groups[gi];
                            gi += 1;
                            match first_of_group.get(&g) {
                                Some(&f) => {
                                    uf.union(f, hi);
                                }
                                None => {
                                    first_of_group.insert(g, hi);
                                }
                            }
                        }
                    }
                }
                let mut rank = prev.rank;
                let head_index = |v: VertexId| next_heads.binary_search(&v).expect("live head tracked");
                if place_right {
                    // All live out-arcs must land on the right.
                    let ok = c.members[u]
                        .iter()
                        .flat_map(|&a| live_out[a].iter())
                        .all(|&b| side_of(c.psi[b]) == Some(true));
                    if !ok {
                        continue;
                    }
                } else {
                    for &a in &c.members[u] {
                        let mut roots: Vec<usize> = live_out[a]
                            .iter()
                            .map(|&b| head_index(b))
                            .filter(|&hi| right_head[hi])
                            .map(|hi| uf.find_mut(hi))
                            .collect();
                        roots.sort_unstable();
                        roots.dedup();
                        rank += roots.len();
                        for w in roots.windows(2) {
                            uf.union(w[0], w[1]);
                        }
                    }
                }
                let rank = rank.min(k);
                // Project onto the boundary at position i.
                let here_heads = &heads[i];
                let here_boundary = &boundary[i];
                let sides: Vec<bool> = here_boundary
                    .iter()
                    .map(|&comp| if comp == u { place_right } else { side_of(comp).expect("boundary shrinks") })
                    .collect();
                let mut groups = Vec::new();
                let mut label: HashMap<usize, u8> = HashMap::new();
                let mut fresh = 0u8;
                for &h in here_heads {
                    let comp = c.psi[h];
                    let is_right = if comp == u { place_right } else { side_of(comp) == Some(true) };
                    if !is_right {
                        continue;
                    }
                    let key = if comp == u {
                        usize::MAX - h // a new singleton group
                    } else {
                        uf.find_mut(head_index(h))
                    };
                    let g = *label.entry(key).or_insert_with(|| {
                        fresh += 1;
                        fresh - 1
                    });
                    groups.push(g);
                }
                let entry = DpEntry { boundary_sides: sides, groups, rank, prev: Some(pi), placed_right: place_right };
                match index.get(&(entry.boundary_sides.clone(), entry.groups.clone())) {
                    Some(&at) => {
                        if layer[at].rank < entry.rank {
                            layer[at] = entry;
                        }
                    }
                    None => {
                        index.insert((entry.boundary_sides.clone(), entry.groups.clone()), layer.len());
                        layer.push(entry);
                    }
                }
            }
        }
        stats.states += layer.len();
        stats.max_boundary = stats.max_boundary.max(boundary[i].len());
        stats.max_heads = stats.max_heads.max(heads[i].len());
        layers[i] = layer;
    }
    let table = DpTable { order: order.clone(), boundary, heads, layers };
    let partition = table.layers[0].iter().position(|e| e.rank >= k).map(|idx| {
        let sides = table.suffix_sides(0, idx);
        let right: Vec<bool> = (0..inst.d.n).map(|v| sides[c.psi[v]].expect("all placed")).collect();
        partition_from_sides(&right)
    });
    DigraphOutcome { partition, stats, table: Some(table), condensation: c, forced }
}
