//! `contractvc`: decide whether `k` edge contractions can lower the vertex
//! cover number of a graph by `d`.
//!
//! Exit codes: `0` for YES (or a valid witness, or a clean cross-check), `1`
//! for NO (or an invalid witness, or a discrepancy), `2` for any error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact solver for Contraction(vc).
#[derive(Parser, Debug)]
#[command(name = "contractvc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance with the exact algorithm.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Use the exhaustive oracle instead of the algorithm.
        #[arg(long, conflicts_with = "dump_condensation")]
        brute: bool,
        /// Skip witness extraction.
        #[arg(long)]
        no_witness: bool,
        /// Worker threads for the annotated-instance fan-out (1 = sequential).
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write the witness edges to this file (one `u v` pair per line).
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Write every digraph condensation the DP runs on into this directory.
        #[arg(long, value_name = "DIR")]
        dump_condensation: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve an instance with the exhaustive oracle.
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a witness: `|F| ≤ k` and `vc(G/F) ≤ vc(G) − d`.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Witness file: one edge `u v` (1-based) per line.
        witness: PathBuf,
    },
    /// Generate an instance: a graph file plus a `<out>.json` sidecar.
    Gen {
        #[command(subcommand)]
        kind: commands::GenKind,
        /// Random seed.
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        /// Output graph file.
        #[arg(long, global = true, default_value = "instance.txt")]
        out: PathBuf,
    },
    /// Compare the solver with the oracle on small graphs.
    Crosscheck {
        /// Largest number of vertices (at most 9).
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Number of random graphs on top of the exhaustive sweep.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A graph file with the parameters `k` and `d`.
#[derive(Args, Debug)]
struct InstanceArgs {
    /// Graph file (`p <n> <m>` header, `e <u> <v>` lines, 1-based).
    graph: PathBuf,
    /// Contraction budget.
    #[arg(allow_negative_numbers = true)]
    k: i64,
    /// Required drop of the vertex cover number.
    #[arg(allow_negative_numbers = true)]
    d: i64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Print the report as one JSON object.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
