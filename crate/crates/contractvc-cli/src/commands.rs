//! Implementations of the subcommands.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::Subcommand;
use contractvc::exact::vertex_cover_number;
use contractvc::generators::{
    gen_cvc_from_eif, gen_eif_from_mis, gen_np_hard, random_bipartite_with_cover, random_graph, random_mis_instance,
};
use contractvc::instance::verify_witness;
use contractvc::oracles::{oracle_contraction_vc, oracle_contraction_vc_capped, OracleCaps};
use contractvc::{solve_with, Answer, CvcInstance, EdgeSet, EifInstance, Graph, SolveOptions, Verdict, VertexSet};
use serde::Serialize;
use serde_json::json;

use crate::report::{Counters, RunReport, Timings};
use crate::{Command, InstanceArgs};

/// Instance families for `gen`.
#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// The `k = d` hardness construction from a random (3×q) multicoloured
    /// independent set instance.
    NpHard {
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
    /// Edge induced forest instance from a random (3×q) multicoloured
    /// independent set instance.
    Eif {
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
    /// The forest construction (`k = 4ℓ`, `d = 3ℓ`) applied to a random graph.
    CvcFromEif {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
    /// Random bipartite graph whose first side is a minimum vertex cover.
    Bipartite {
        #[arg(long, default_value_t = 10)]
        nx: usize,
        #[arg(long, default_value_t = 20)]
        ny: usize,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
    },
    /// Erdős–Rényi random graph.
    Random {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
    },
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve { instance, brute, no_witness, threads, witness_out, dump_condensation, output } => {
            let start = Instant::now();
            let inst = load_instance(&instance)?;
            ensure!(threads >= 1, "--threads must be at least 1");
            let verdict = if brute {
                oracle_contraction_vc(&inst)?
            } else {
                let opts = SolveOptions {
                    witness: !no_witness,
                    parallel: threads > 1,
                    dump_condensations: dump_condensation.is_some(),
                    ..SolveOptions::default()
                };
                let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
                pool.install(|| solve_with(&inst, &opts))
            };
            if let Some(dir) = dump_condensation {
                write_condensations(&dir, &verdict.stats.condensations)?;
            }
            let witness = if no_witness { None } else { verdict.witness.clone() };
            if let (Some(path), Some(w)) = (&witness_out, &witness) {
                fs::write(path, edges_to_text(w)).with_context(|| format!("writing {}", path.display()))?;
            }
            let report = build_report(&inst, &verdict, witness, start)?;
            emit(&report, output.json)?;
            Ok(answer_code(report.verdict))
        }
        Command::Oracle { instance, output } => {
            let start = Instant::now();
            let inst = load_instance(&instance)?;
            let verdict = oracle_contraction_vc(&inst)?;
            let witness = verdict.witness.clone();
            let report = build_report(&inst, &verdict, witness, start)?;
            emit(&report, output.json)?;
            Ok(answer_code(report.verdict))
        }
        Command::Verify { instance, witness } => {
            let inst = load_instance(&instance)?;
            let text = fs::read_to_string(&witness).with_context(|| format!("reading {}", witness.display()))?;
            let f = parse_edges(&text, &inst.g)?;
            let ok = verify_witness(&inst, &f);
            let (h, _) = inst.g.contract_edges(&f)?;
            println!(
                "{}: |F|={} k={} vc(G)={} vc(G/F)={} d={}",
                if ok { "valid" } else { "invalid" },
                f.len(),
                inst.k,
                vertex_cover_number(&inst.g),
                vertex_cover_number(&h),
                inst.d
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Gen { kind, seed, out } => {
            generate(kind, seed, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Crosscheck { max_n, budget, seed } => crosscheck(max_n, budget, seed),
    }
}

fn answer_code(a: Answer) -> ExitCode {
    match a {
        Answer::Yes => ExitCode::SUCCESS,
        Answer::No => ExitCode::from(1),
    }
}

fn load_instance(args: &InstanceArgs) -> Result<CvcInstance> {
    ensure!(args.k >= 0, "k must be non-negative, got {}", args.k);
    ensure!(args.d >= 0, "d must be non-negative, got {}", args.d);
    let text = fs::read_to_string(&args.graph).with_context(|| format!("reading {}", args.graph.display()))?;
    let g = Graph::from_text(&text).with_context(|| format!("parsing {}", args.graph.display()))?;
    Ok(CvcInstance::new(g, args.k as usize, args.d as usize))
}

fn build_report(inst: &CvcInstance, verdict: &Verdict, witness: Option<EdgeSet>, start: Instant) -> Result<RunReport> {
    let vc_before = vertex_cover_number(&inst.g);
    let vc_after = match &witness {
        Some(f) => Some(vertex_cover_number(&inst.g.contract_edges(f)?.0)),
        None => None,
    };
    Ok(RunReport {
        verdict: verdict.answer,
        witness_edges: witness.map(|f| f.iter().map(|&(u, v)| (u + 1, v + 1)).collect()),
        vc_before,
        vc_after,
        k: inst.k,
        d: inst.d,
        branch_taken: verdict.stats.branch,
        timings: Timings::new(verdict.stats.elapsed, start.elapsed()),
        counters: Counters::from(&verdict.stats),
    })
}

fn emit(report: &RunReport, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string(report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

/// One `u v` pair per line, 1-based.
fn edges_to_text(f: &EdgeSet) -> String {
    f.iter().map(|&(u, v)| format!("{} {}\n", u + 1, v + 1)).collect()
}

/// Parses `u v` (or `e u v`) lines, 1-based; blank and `c` lines are ignored.
fn parse_edges(text: &str, g: &Graph) -> Result<EdgeSet> {
    let mut f = EdgeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().filter(|t| *t != "e").collect();
        let nums: Vec<usize> = toks
            .iter()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("witness line {}: expected `u v`", i + 1))?;
        let [u, v] = nums[..] else { bail!("witness line {}: expected `u v`", i + 1) };
        ensure!(u >= 1 && v >= 1 && u <= g.n() && v <= g.n(), "witness line {}: vertex out of range", i + 1);
        ensure!(g.has_edge(u - 1, v - 1), "witness line {}: {u}-{v} is not an edge", i + 1);
        f.insert(contractvc::graph::edge(u - 1, v - 1));
    }
    Ok(f)
}

fn write_condensations(dir: &Path, dumps: &[String]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (i, text) in dumps.iter().enumerate() {
        let path = dir.join(format!("condensation-{:04}.txt", i + 1));
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("wrote {} condensation(s) to {}", dumps.len(), dir.display());
    Ok(())
}

/// JSON written next to a generated graph.
#[derive(Serialize)]
struct Sidecar {
    k: Option<usize>,
    d: Option<usize>,
    construction: &'static str,
    params: serde_json::Value,
    /// `named_vertices[i]` names vertex `i + 1`.
    named_vertices: Vec<String>,
    /// A minimum vertex cover guaranteed by the construction (1-based).
    cover: Option<Vec<usize>>,
}

fn one_based(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

fn generate(kind: GenKind, seed: u64, out: &Path) -> Result<()> {
    let (graph, sidecar) = match kind {
        GenKind::NpHard { q, l } => {
            ensure!(q >= 1 && l >= 1, "q and l must be positive");
            let out = gen_np_hard(&random_mis_instance(q, seed), l)?;
            let sidecar = Sidecar {
                k: Some(out.instance.k),
                d: Some(out.instance.d),
                construction: "np-hard",
                params: json!({ "q": q, "l": l, "seed": seed }),
                named_vertices: out.names,
                cover: out.cover.as_ref().map(one_based),
            };
            (out.instance.g, sidecar)
        }
        GenKind::Eif { q } => {
            ensure!(q >= 1, "q must be positive");
            let out = gen_eif_from_mis(&random_mis_instance(q, seed));
            let sidecar = Sidecar {
                k: None,
                d: None,
                construction: "eif",
                params: json!({ "q": q, "l": out.instance.l, "seed": seed }),
                named_vertices: out.names,
                cover: None,
            };
            (out.instance.g, sidecar)
        }
        GenKind::CvcFromEif { n, p, l } => {
            ensure!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
            let out = gen_cvc_from_eif(&EifInstance { g: random_graph(n, p, seed), l });
            let sidecar = Sidecar {
                k: Some(out.instance.k),
                d: Some(out.instance.d),
                construction: "cvc-from-eif",
                params: json!({ "n": n, "p": p, "l": l, "seed": seed }),
                named_vertices: out.names,
                cover: out.cover.as_ref().map(one_based),
            };
            (out.instance.g, sidecar)
        }
        GenKind::Bipartite { nx, ny, p } => {
            ensure!(nx <= ny, "--nx must not exceed --ny");
            ensure!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
            let (g, x) = random_bipartite_with_cover(nx, ny, p, seed);
            let sidecar = Sidecar {
                k: None,
                d: None,
                construction: "bipartite",
                params: json!({ "nx": nx, "ny": ny, "p": p, "seed": seed }),
                named_vertices: Vec::new(),
                cover: Some(one_based(&x)),
            };
            (g, sidecar)
        }
        GenKind::Random { n, p } => {
            ensure!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
            let sidecar = Sidecar {
                k: None,
                d: None,
                construction: "random",
                params: json!({ "n": n, "p": p, "seed": seed }),
                named_vertices: Vec::new(),
                cover: None,
            };
            (random_graph(n, p, seed), sidecar)
        }
    };
    fs::write(out, graph.to_text()).with_context(|| format!("writing {}", out.display()))?;
    let side = sidecar_path(out);
    fs::write(&side, serde_json::to_string_pretty(&sidecar)? + "\n")
        .with_context(|| format!("writing {}", side.display()))?;
    eprintln!("wrote {} and {}", out.display(), side.display());
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Every labelled graph on `n` vertices.
fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::new(n, &edges).expect("distinct pairs")
    })
}

fn crosscheck(max_n: usize, budget: usize, seed: u64) -> Result<ExitCode> {
    ensure!((1..=9).contains(&max_n), "--max-n must lie in 1..=9");
    let caps = OracleCaps { max_vertices: max_n, max_k: max_n };
    let exhaustive = (1..=max_n.min(5)).flat_map(all_graphs);
    let random = (0..budget as u64).map(|i| {
        let s = seed.wrapping_add(i);
        let n = 1 + (s % max_n as u64) as usize;
        random_graph(n, 0.15 + 0.6 * ((s * 31) % 101) as f64 / 101.0, s)
    });
    let (mut checked, mut bad) = (0usize, 0usize);
    let mut first: Option<String> = None;
    for g in exhaustive.chain(random) {
        for k in 0..=g.rank() {
            for d in 0..=k {
                let inst = CvcInstance::new(g.clone(), k, d);
                let want = oracle_contraction_vc_capped(&inst, caps)?;
                let got = solve_with(&inst, &SolveOptions::default());
                let witness_ok = got.witness.as_ref().map_or(got.answer == Answer::No, |w| verify_witness(&inst, w));
                checked += 1;
                if got.answer != want.answer || !witness_ok {
                    bad += 1;
                    first.get_or_insert_with(|| {
                        format!(
                            "c k={k} d={d} solver={:?} oracle={:?}\n{}",
                            got.answer,
                            want.answer,
                            g.to_text()
                        )
                    });
                }
            }
        }
    }
    println!("checked {checked} instances: {} agree, {bad} disagree", checked - bad);
    match first {
        None => Ok(ExitCode::SUCCESS),
        Some(example) => {
            println!("first counterexample:\n{example}");
            Ok(ExitCode::from(1))
        }
    }
}
