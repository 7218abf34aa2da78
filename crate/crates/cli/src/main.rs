//! `wmpc` — exact solvers for one-round shuffle cost in clusters with
//! heterogeneous link prices.
//!
//! The binary works on line-oriented instance files (see
//! [`format`]) and exposes four commands: `solve` writes an optimal
//! assignment as a solution file, `eval` prices a fixed assignment,
//! `gen` produces instances from hardness constructions and seeded
//! random generators, and `bench` tabulates optimized against
//! identity-baseline costs.
//!
//! Exit codes: `0` success, `2` input error (bad files, flags or
//! parameters), `3` exceeded size cap, `4` internal invariant
//! violation.

mod commands;
mod format;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wmpc_core::branch_bound::DEFAULT_NODE_CAP;
use wmpc_core::dap::{DpConfig, HardBudget};
use wmpc_core::model::BRUTE_FORCE_CAP;
use wmpc_core::Objective;

#[derive(Parser)]
#[command(
    name = "wmpc",
    version,
    about = "Exact one-round shuffle cost minimization for weighted clusters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and write a solution file.
    Solve(SolveArgs),
    /// Price a fixed assignment on an instance.
    Eval(EvalArgs),
    /// Generate instance files.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Compare optimized assignments against the identity baseline.
    Bench(BenchArgs),
}

/// Problem family of the instance being solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    /// Redistribution: the transmission matrix is fixed.
    Drp,
    /// Allocation: splitters are chosen along with the assignment.
    Dap,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Drp => "drp",
            ProblemKind::Dap => "dap",
        }
    }
}

#[derive(Args)]
pub struct SolveArgs {
    /// Problem family; must match the instance file kind.
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    /// Objective to minimize: total, btnk, msr or ssr.
    #[arg(long)]
    pub objective: Objective,
    /// Instance file to solve.
    #[arg(long)]
    pub input: PathBuf,
    /// Solution file to write; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Solve by exhaustive enumeration instead of the dedicated solver.
    #[arg(long)]
    pub oracle: bool,
    /// Machine cap for exhaustive enumeration (n! growth).
    #[arg(long, default_value_t = BRUTE_FORCE_CAP)]
    pub brute_cap: usize,
    /// Node budget for the msr/ssr branch-and-bound search.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    pub node_cap: u64,
    /// Machine cap for the allocation dynamic programs (2^n states).
    #[arg(long, default_value_t = DpConfig::default().max_machines)]
    pub dp_max_machines: usize,
    /// Value cap for the msr/ssr splitter walk (binomial growth).
    #[arg(long, default_value_t = HardBudget::default().max_values)]
    pub walk_max_values: usize,
    /// Machine cap for the msr/ssr splitter walk.
    #[arg(long, default_value_t = HardBudget::default().max_machines)]
    pub walk_max_machines: usize,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Instance file to evaluate against.
    #[arg(long)]
    pub input: PathBuf,
    /// Assignment as comma-separated 1-based machine numbers.
    #[arg(long)]
    pub perm: String,
    /// Splitters as comma-separated 1-based indices into the merged
    /// sorted values; required for allocation instances.
    #[arg(long)]
    pub splitters: Option<String>,
}

#[derive(Subcommand)]
pub enum GenCommand {
    /// Embed an equal-split set question into a redistribution
    /// instance whose msr optimum reveals the answer.
    PartitionMsr {
        /// Comma-separated positive item values.
        #[arg(long)]
        set: String,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Embed a triple-grouping question into a redistribution instance
    /// whose ssr optimum reveals the answer.
    #[command(name = "3partition-ssr")]
    ThreePartitionSsr {
        /// Number of triples to form.
        #[arg(long)]
        k: usize,
        /// Comma-separated positive item values, 3k of them.
        #[arg(long)]
        values: String,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Encode clique existence as an equal-split selection instance.
    CliqueSp {
        /// Comma-separated edges, each as two 1-based vertices joined
        /// by a dash, e.g. 1-2,2-3.
        #[arg(long, default_value = "")]
        edges: String,
        /// Clique size to look for.
        #[arg(long)]
        k: usize,
        /// Vertex count; defaults to the largest edge endpoint.
        #[arg(long)]
        vertices: Option<usize>,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Turn an equal-split selection instance into a splitter-graph
    /// allocation form whose msr optimum reveals the answer.
    SpDapmsr {
        /// Comma-separated item values; alternative to --input.
        #[arg(long)]
        set: Option<String>,
        /// An sp instance file; alternative to --set.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Number of items to select; required with --set.
        #[arg(long)]
        k: Option<usize>,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Uniform random transmission and cost matrices.
    RandomDrp {
        #[arg(long)]
        n: usize,
        /// Largest matrix entry.
        #[arg(long, default_value_t = 9)]
        max_entry: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Random transmission over rack-structured costs: cheap within a
    /// rack, expensive across.
    RackDrp {
        #[arg(long)]
        racks: usize,
        #[arg(long)]
        per_rack: usize,
        /// Cost between machines in the same rack.
        #[arg(long)]
        intra: u64,
        /// Cost between machines in different racks.
        #[arg(long)]
        inter: u64,
        /// Largest transmission entry.
        #[arg(long, default_value_t = 9)]
        max_t: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Values scattered uniformly across machines with random costs.
    RandomDap {
        #[arg(long)]
        n: usize,
        /// Total number of values across all machines.
        #[arg(long)]
        values: usize,
        /// Values are drawn from -max_value..=max_value.
        #[arg(long, default_value_t = 50)]
        max_value: i64,
        #[arg(long, default_value_t = 9)]
        max_cost: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Contiguous value blocks laid out in reverse machine order: free
    /// for the optimum, expensive for the identity baseline.
    InverseDap {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        per_machine: usize,
        /// Off-diagonal costs are drawn from 1..=max_cost.
        #[arg(long, default_value_t = 9)]
        max_cost: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Contiguous value blocks already in machine order: free for
    /// everyone.
    SortedDap {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        per_machine: usize,
        /// Off-diagonal costs are drawn from 0..=max_cost.
        #[arg(long, default_value_t = 9)]
        max_cost: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Instance families benchable against the identity baseline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteKind {
    InverseDap,
    SortedDap,
    RandomDap,
    RandomDrp,
    RackDrp,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Instance family to generate and solve.
    #[arg(long, value_enum)]
    pub suite: SuiteKind,
    /// Objective to minimize: total, btnk, msr or ssr.
    #[arg(long)]
    pub objective: Objective,
    /// Number of instances; seeds run from --seed upwards.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Values per machine (inverse-dap, sorted-dap).
    #[arg(long, default_value_t = 2)]
    pub per_machine: usize,
    /// Total value count (random-dap).
    #[arg(long, default_value_t = 8)]
    pub values: usize,
    /// Value range bound (random-dap).
    #[arg(long, default_value_t = 50)]
    pub max_value: i64,
    /// Cost bound (allocation suites).
    #[arg(long, default_value_t = 9)]
    pub max_cost: u64,
    /// Matrix entry bound (random-drp).
    #[arg(long, default_value_t = 9)]
    pub max_entry: u64,
    /// Rack count (rack-drp).
    #[arg(long, default_value_t = 2)]
    pub racks: usize,
    /// Machines per rack (rack-drp).
    #[arg(long, default_value_t = 2)]
    pub per_rack: usize,
    /// Intra-rack cost (rack-drp).
    #[arg(long, default_value_t = 1)]
    pub intra: u64,
    /// Cross-rack cost (rack-drp).
    #[arg(long, default_value_t = 10)]
    pub inter: u64,
    /// Transmission entry bound (rack-drp).
    #[arg(long, default_value_t = 9)]
    pub max_t: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Solve(args) => commands::run_solve(args, &mut out),
        Command::Eval(args) => commands::run_eval(args, &mut out),
        Command::Gen(cmd) => commands::run_gen(cmd, &mut out),
        Command::Bench(args) => commands::run_bench(args, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
