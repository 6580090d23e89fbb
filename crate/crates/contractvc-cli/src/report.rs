//! The machine-readable result of `solve` and `oracle`.
//!
//! The JSON schema is a single object:
//!
//! ```text
//! {
//!   "verdict": "YES" | "NO",
//!   "witness_edges": [[u, v], ...] | null,   // 1-based, as in the graph file
//!   "vc_before": int,                        // vc(G)
//!   "vc_after": int | null,                  // vc(G/F) when a witness is present
//!   "k": int, "d": int,
//!   "branch_taken": "trivial" | "k_eq_rank" | "two_d_le_k" | "pipeline" | "oracle" | null,
//!   "timings": { "solve_us": int, "total_us": int },
//!   "counters": { "annotated_instances": int, "expansion_instances": int,
//!                 "dp_runs": int, "dp_states": int, "nodes": int }
//! }
//! ```
//!
//! Timings vary between runs; every other field is deterministic.

use std::time::Duration;

use contractvc::{Answer, Branch, SolveStats};
use serde::{Deserialize, Serialize};

/// Outcome of one solver or oracle run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub verdict: Answer,
    pub witness_edges: Option<Vec<(usize, usize)>>,
    pub vc_before: usize,
    pub vc_after: Option<usize>,
    pub k: usize,
    pub d: usize,
    pub branch_taken: Option<Branch>,
    pub timings: Timings,
    pub counters: Counters,
}

/// Wall-clock timings in microseconds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub solve_us: u64,
    pub total_us: u64,
}

impl Timings {
    pub fn new(solve: Duration, total: Duration) -> Self {
        Self { solve_us: solve.as_micros() as u64, total_us: total.as_micros() as u64 }
    }
}

/// Work counters reported by the solver or oracle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub annotated_instances: usize,
    pub expansion_instances: usize,
    pub dp_runs: usize,
    pub dp_states: usize,
    pub nodes: usize,
}

impl From<&SolveStats> for Counters {
    fn from(s: &SolveStats) -> Self {
        Self {
            annotated_instances: s.annotated_instances,
            expansion_instances: s.expansion_instances,
            dp_runs: s.dp_runs,
            dp_states: s.dp_states,
            nodes: s.nodes,
        }
    }
}

impl RunReport {
    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let verdict = match self.verdict {
            Answer::Yes => "YES",
            Answer::No => "NO",
        };
        let branch = self
            .branch_taken
            .and_then(|b| serde_json::to_value(b).ok())
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_else(|| "-".into());
        let mut out = format!(
            "verdict: {verdict}\nk={} d={} vc_before={} vc_after={} branch={branch}\n",
            self.k,
            self.d,
            self.vc_before,
            self.vc_after.map_or("-".into(), |v| v.to_string()),
        );
        if let Some(w) = &self.witness_edges {
            let edges: Vec<String> = w.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            out.push_str(&format!("witness: {}\n", edges.join(" ")));
        }
        out.push_str(&format!(
            "time: {}us, annotated={} expansion={} dp_runs={} dp_states={} nodes={}\n",
            self.timings.total_us,
            self.counters.annotated_instances,
            self.counters.expansion_instances,
            self.counters.dp_runs,
            self.counters.dp_states,
            self.counters.nodes,
        ));
        out
    }
}
