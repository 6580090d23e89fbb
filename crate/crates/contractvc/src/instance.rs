//! Problem instances and verdicts shared by the solver, the oracles and the CLI.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::exact::vertex_cover_number;
use crate::graph::{EdgeSet, Graph, VertexSet};

/// An instance `(G, k, d)` of Contraction(vc).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvcInstance {
    pub g: Graph,
    pub k: usize,
    pub d: usize,
}

impl CvcInstance {
    pub fn new(g: Graph, k: usize, d: usize) -> Self {
        Self { g, k, d }
    }
}

/// A YES/NO answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

/// Which case of the algorithm produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `d = 0`, `k < d`, or a graph without edges.
    Trivial,
    /// `k = rank(G)`: YES iff `vc(G) ≥ d`.
    KEqRank,
    /// `k < rank(G)` and `2d ≤ k`: YES iff `vc(G) > d`.
    TwoDLeK,
    /// `d ≤ k < 2d`: the full reduction pipeline.
    Pipeline,
    /// Exhaustive oracle.
    Oracle,
}

/// Counters collected while solving.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// The most involved case used (over all components).
    pub branch: Option<Branch>,
    /// Annotated instances emitted.
    pub annotated_instances: usize,
    /// Instances emitted by the `k > d` expansion with at least one pendant.
    pub expansion_instances: usize,
    /// Dynamic programs run to completion.
    pub dp_runs: usize,
    /// Total DP table entries created.
    pub dp_states: usize,
    /// Enumeration nodes (oracles) or sub-instances (solver) explored.
    pub nodes: usize,
    /// Wall-clock time.
    #[serde(with = "duration_micros")]
    pub elapsed: Duration,
    /// Text dumps of the digraph condensations the DP ran on, when requested.
    #[serde(skip)]
    pub condensations: Vec<String>,
}

impl SolveStats {
    pub fn absorb(&mut self, other: &SolveStats) {
        self.branch = self.branch.max(other.branch);
        self.annotated_instances += other.annotated_instances;
        self.expansion_instances += other.expansion_instances;
        self.dp_runs += other.dp_runs;
        self.dp_states += other.dp_states;
        self.nodes += other.nodes;
        self.condensations.extend(other.condensations.iter().cloned());
    }
}

mod duration_micros {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_micros() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_micros(u64::deserialize(d)?))
    }
}

/// The outcome of solving an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    /// For YES (unless witnesses were disabled): a set `F` with `|F| ≤ k` and
    /// `vc(G/F) ≤ vc(G) − d`.
    pub witness: Option<EdgeSet>,
    pub stats: SolveStats,
}

impl Verdict {
    pub fn yes(witness: Option<EdgeSet>) -> Self {
        Self { answer: Answer::Yes, witness, stats: SolveStats::default() }
    }

    pub fn no() -> Self {
        Self { answer: Answer::No, witness: None, stats: SolveStats::default() }
    }

    pub fn with_branch(mut self, b: Branch) -> Self {
        self.stats.branch = Some(b);
        self
    }
}

/// Recomputes whether `f` is a solution of `inst`: `F ⊆ E(G)`, `|F| ≤ k`
/// and `vc(G/F) ≤ vc(G) − d`.
pub fn verify_witness(inst: &CvcInstance, f: &EdgeSet) -> bool {
    if f.len() > inst.k {
        return false;
    }
    let Ok((h, _)) = inst.g.contract_edges(f) else {
        return false;
    };
    vertex_cover_number(&h) + inst.d <= vertex_cover_number(&inst.g)
}

/// An instance of multicoloured independent set: pick one vertex per class,
/// pairwise non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisInstance {
    pub g: Graph,
    pub classes: Vec<VertexSet>,
}

/// An instance of edge induced forest: at least `l` edges whose endpoints
/// induce a forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EifInstance {
    pub g: Graph,
    pub l: usize,
}
