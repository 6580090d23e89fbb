//! Simple undirected graphs with edge contraction, rank, spanning forests and
//! cover predicates.
//!
//! Graphs are immutable values: every operation returns a new graph. Vertex
//! ids are dense (`0..n`). Contraction hands out fresh dense ids and returns a
//! [`ContractionMap`] recording where every original vertex went, which is what
//! lets the solver map witnesses back to the input graph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

/// Dense vertex identifier, `0..n`.
pub type VertexId = usize;

/// Undirected edge in canonical form (smaller endpoint first).
pub type Edge = (VertexId, VertexId);

/// A set of vertices, iterated in increasing order.
pub type VertexSet = BTreeSet<VertexId>;

/// A set of canonical edges, iterated in lexicographic order.
pub type EdgeSet = BTreeSet<Edge>;

/// Canonical form of the undirected edge `{u, v}`.
#[inline]
pub fn edge(u: VertexId, v: VertexId) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph: no loops, no parallel edges, sorted adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

/// The surjection from the vertices of a graph onto the vertices of one of its
/// contractions, together with its fibres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    /// `forward[v]` is the image of original vertex `v`.
    pub forward: Vec<VertexId>,
    /// `preimages[w]` lists, in increasing order, the original vertices merged into `w`.
    pub preimages: Vec<Vec<VertexId>>,
}

impl ContractionMap {
    /// The identity map on `n` vertices.
    pub fn identity(n: usize) -> Self {
        Self {
            forward: (0..n).collect(),
            preimages: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Builds the map that sends each original vertex to its class, numbering
    /// classes by their smallest member. `class_of` may use arbitrary labels.
    pub fn from_classes(class_of: &[usize]) -> Self {
        let mut label = vec![usize::MAX; class_of.len()];
        let mut forward = vec![0; class_of.len()];
        let mut preimages: Vec<Vec<VertexId>> = Vec::new();
        let mut next = 0;
        for (v, &c) in class_of.iter().enumerate() {
            if label[c] == usize::MAX {
                label[c] = next;
                preimages.push(Vec::new());
                next += 1;
            }
            forward[v] = label[c];
            preimages[label[c]].push(v);
        }
        Self { forward, preimages }
    }

    /// Number of vertices of the contracted graph.
    pub fn image_size(&self) -> usize {
        self.preimages.len()
    }

    /// `self` followed by `next` (a map out of this map's image).
    pub fn then(&self, next: &ContractionMap) -> ContractionMap {
        let forward: Vec<VertexId> = self.forward.iter().map(|&w| next.forward[w]).collect();
        let mut preimages = vec![Vec::new(); next.image_size()];
        for (v, &w) in forward.iter().enumerate() {
            preimages[w].push(v);
        }
        ContractionMap { forward, preimages }
    }
}

/// A two-sided partition of a vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = EdgeSet::new();
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if !seen.insert(edge(u, v)) {
                let (a, b) = edge(u, v);
                return Err(Error::DuplicateEdge(a, b));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { adj, m: seen.len() })
    }

    /// Builds a graph from possibly repeated edges, silently dropping loops and
    /// parallels. Used for quotients, where both arise naturally.
    pub fn from_edges_lossy(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "endpoint out of range");
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Self { adj, m: m / 2 }
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges in canonical lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    fn check_vertices<'a>(&self, s: impl IntoIterator<Item = &'a VertexId>) -> Result<()> {
        for &v in s {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
            }
        }
        Ok(())
    }

    /// `G/F`: merges each connected component of `(V(F), F)` into one vertex.
    ///
    /// New ids are dense and ordered by the smallest original member of each class.
    pub fn contract_edges(&self, f: &EdgeSet) -> Result<(Graph, ContractionMap)> {
        let mut uf = UnionFind::<usize>::new(self.n());
        for &(u, v) in f {
            if !self.has_edge(u, v) {
                return Err(Error::UnknownEdge(u, v));
            }
            uf.union(u, v);
        }
        let classes: Vec<usize> = (0..self.n()).map(|v| uf.find_mut(v)).collect();
        let map = ContractionMap::from_classes(&classes);
        Ok((self.quotient(&map), map))
    }

    /// The simple quotient graph induced by a vertex map.
    pub fn quotient(&self, map: &ContractionMap) -> Graph {
        Graph::from_edges_lossy(
            map.image_size(),
            self.edges().map(|(u, v)| (map.forward[u], map.forward[v])),
        )
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for root in 0..self.n() {
            if seen[root] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([root]);
            seen[root] = true;
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// `|V| − #components`.
    pub fn rank(&self) -> usize {
        self.n() - self.connected_components().len()
    }

    /// Rank of the induced subgraph `G[s]`.
    pub fn rank_vertex_set(&self, s: &VertexSet) -> Result<usize> {
        self.check_vertices(s)?;
        Ok(self.spanning_forest_unchecked(s).len())
    }

    /// Rank of an edge set, defined as the rank of `G[V(F)]` — the subgraph
    /// *induced* by the endpoints, which may contain edges outside `F`.
    pub fn rank_edge_set(&self, f: &EdgeSet) -> Result<usize> {
        let ends: VertexSet = f.iter().flat_map(|&(u, v)| [u, v]).collect();
        self.rank_vertex_set(&ends)
    }

    /// Spanning forest of `G[s]` built by breadth-first search from the lowest
    /// unvisited vertex, scanning neighbours in increasing order.
    pub fn spanning_forest(&self, s: &VertexSet) -> Result<EdgeSet> {
        self.check_vertices(s)?;
        Ok(self.spanning_forest_unchecked(s))
    }

    fn spanning_forest_unchecked(&self, s: &VertexSet) -> EdgeSet {
        let mut inside = vec![false; self.n()];
        for &v in s {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut forest = EdgeSet::new();
        for &root in s {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        forest.insert(edge(u, w));
                        queue.push_back(w);
                    }
                }
            }
        }
        forest
    }

    pub fn is_vertex_cover(&self, s: &VertexSet) -> bool {
        self.edges().all(|(u, v)| s.contains(&u) || s.contains(&v))
    }

    pub fn is_independent_set(&self, s: &VertexSet) -> bool {
        s.iter().all(|&u| self.adj[u].iter().all(|w| !s.contains(w)))
    }

    /// Open neighbourhood `N(S) = N[S] \ S`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        s.iter()
            .flat_map(|&u| self.adj[u].iter().copied())
            .filter(|w| !s.contains(w))
            .collect()
    }

    /// The subgraph induced by `s`, relabelled densely; the second component
    /// maps new ids back to old ones.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<VertexId>) {
        let back: Vec<VertexId> = s.iter().copied().collect();
        let mut fwd = vec![usize::MAX; self.n()];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| fwd[u] != usize::MAX && fwd[v] != usize::MAX)
            .map(|(u, v)| (fwd[u], fwd[v]));
        (Graph::from_edges_lossy(back.len(), edges), back)
    }

    /// The same vertex set with the edges of `f` removed.
    pub fn without_edges(&self, f: &EdgeSet) -> Graph {
        Graph::from_edges_lossy(self.n(), self.edges().filter(|e| !f.contains(e)))
    }

    /// Appends `extra` isolated vertices and then the given edges.
    pub fn extended(&self, extra: usize, new_edges: &[(VertexId, VertexId)]) -> Graph {
        Graph::from_edges_lossy(self.n() + extra, self.edges().chain(new_edges.iter().copied()))
    }

    /// A proper 2-colouring (lowest vertex of each component gets colour 0), if any.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n()];
        for root in 0..self.n() {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// The vertices of some odd cycle, or `None` if the graph is bipartite.
    pub fn odd_cycle(&self) -> Option<Vec<VertexId>> {
        let mut color = vec![u8::MAX; self.n()];
        let mut parent = vec![usize::MAX; self.n()];
        for root in 0..self.n() {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        parent[w] = u;
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        // Walk both BFS-tree paths up to their meeting point.
                        let path_to_root = |mut x: VertexId| {
                            let mut p = vec![x];
                            while parent[x] != usize::MAX {
                                x = parent[x];
                                p.push(x);
                            }
                            p
                        };
                        let (pu, pw) = (path_to_root(u), path_to_root(w));
                        let on_pw: VertexSet = pw.iter().copied().collect();
                        let meet = *pu.iter().find(|x| on_pw.contains(x)).expect("same tree");
                        let mut cycle: Vec<VertexId> = pu.iter().copied().take_while(|&x| x != meet).collect();
                        cycle.push(meet);
                        let tail: Vec<VertexId> = pw.iter().copied().take_while(|&x| x != meet).collect();
                        cycle.extend(tail.into_iter().rev());
                        return Some(cycle);
                    }
                }
            }
        }
        None
    }

    /// Serialises to the text format: `p <n> <m>` then `e <u> <v>` (1-based).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Parses the text format; blank lines and `c` comment lines are ignored.
    pub fn from_text(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
                continue;
            }
            let err = |message: &str| Error::Parse { line: line_no, message: message.to_string() };
            let mut toks = line.split_whitespace();
            let tag = toks.next().unwrap_or_default();
            let nums: Vec<usize> = toks
                .map(|t| t.parse::<usize>().map_err(|_| err(&format!("not a non-negative integer: {t}"))))
                .collect::<Result<_>>()?;
            match tag {
                "p" => {
                    if header.is_some() {
                        return Err(err("duplicate problem line"));
                    }
                    if nums.len() != 2 {
                        return Err(err("expected `p <n> <m>`"));
                    }
                    header = Some((nums[0], nums[1]));
                }
                "e" => {
                    let (n, _) = header.ok_or_else(|| err("edge before problem line"))?;
                    if nums.len() != 2 {
                        return Err(err("expected `e <u> <v>`"));
                    }
                    if nums[0] == 0 || nums[1] == 0 || nums[0] > n || nums[1] > n {
                        return Err(err("vertex id out of range (ids are 1-based)"));
                    }
                    edges.push((nums[0] - 1, nums[1] - 1));
                }
                _ => return Err(err(&format!("unknown line tag `{tag}`"))),
            }
        }
        let (n, m) = header.ok_or(Error::Parse { line: 0, message: "missing problem line".into() })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                message: format!("header announces {m} edges but {} were given", edges.len()),
            });
        }
        Graph::new(n, &edges)
    }
}

/// Rank of the graph formed by an explicit edge list (not the induced graph):
/// number of distinct endpoints minus number of components.
pub fn rank_of_edge_list(edges: impl IntoIterator<Item = (usize, usize)>) -> usize {
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    let mut ids: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let idx = |x: usize| ids.binary_search(&x).expect("endpoint listed");
    let mut uf = UnionFind::<usize>::new(ids.len());
    let mut merges = 0;
    for (u, v) in edges {
        if uf.union(idx(u), idx(v)) {
            merges += 1;
        }
    }
    merges
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn build_rejects_malformed_input() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(Error::LoopEdge(0)));
        assert_eq!(Graph::new(2, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(k3().m(), 3);
    }

    #[test]
    fn contraction_examples() {
        let (g, map) = k3().contract_edges(&EdgeSet::from([(0, 1)])).unwrap();
        assert_eq!(g, Graph::new(2, &[(0, 1)]).unwrap());
        assert_eq!(map.forward, vec![0, 0, 1]);

        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (g, _) = p3.contract_edges(&p3.edge_set()).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));

        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let (g, _) = c4.contract_edges(&EdgeSet::from([(0, 1)])).unwrap();
        assert_eq!(g, k3());

        assert_eq!(k3().contract_edges(&EdgeSet::from([(0, 5)])), Err(Error::UnknownEdge(0, 5)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(k3().rank(), 2);
        let two_k2 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.rank(), 2);
        assert_eq!(two_k2.connected_components().len(), 2);
        assert_eq!(k3().rank_edge_set(&EdgeSet::from([(0, 1)])).unwrap(), 1);
        // The induced reading matters: {01, 12} in K3 induces all of K3.
        assert_eq!(k3().rank_edge_set(&EdgeSet::from([(0, 1), (1, 2)])).unwrap(), 2);
    }

    #[test]
    fn spanning_forest_is_lowest_index_bfs() {
        let all: VertexSet = (0..3).collect();
        assert_eq!(k3().spanning_forest(&all).unwrap(), EdgeSet::from([(0, 1), (0, 2)]));
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p3.spanning_forest(&VertexSet::from([0, 2])).unwrap().is_empty());
    }

    #[test]
    fn predicates() {
        assert!(k3().is_vertex_cover(&VertexSet::from([0, 1])));
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p3.is_independent_set(&VertexSet::from([0, 2])));
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.neighborhood(&VertexSet::from([0])), VertexSet::from([1, 2, 3]));
    }

    #[test]
    fn text_round_trip_and_comments() {
        let text = "c a triangle\n\np 3 3\ne 1 2\nc middle\ne 2 3\ne 1 3\n";
        let g = Graph::from_text(text).unwrap();
        assert_eq!(g, k3());
        assert_eq!(g.to_text(), "p 3 3\ne 1 2\ne 1 3\ne 2 3\n");
        assert_eq!(Graph::from_text(&g.to_text()).unwrap().to_text(), g.to_text());
        assert!(Graph::from_text("p 2 1\ne 1 3\n").is_err());
        assert!(Graph::from_text("p 2 2\ne 1 2\n").is_err());
        assert!(Graph::from_text("e 1 2\n").is_err());
    }

    #[test]
    fn odd_cycles_are_found_and_odd() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let cyc = c5.odd_cycle().unwrap();
        assert_eq!(cyc.len(), 5);
        assert!(Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap().odd_cycle().is_none());
        let tail = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let cyc = tail.odd_cycle().unwrap();
        assert_eq!(cyc.len() % 2, 1);
        for i in 0..cyc.len() {
            assert!(tail.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]));
        }
    }

    #[test]
    fn edge_list_rank_ignores_non_listed_edges() {
        assert_eq!(rank_of_edge_list([(0, 1), (1, 2)]), 2);
        assert_eq!(rank_of_edge_list([(0, 1), (2, 3)]), 2);
        assert_eq!(rank_of_edge_list([(0, 1), (0, 1)]), 1);
    }
}
