//! Implementations behind the `solve`, `eval`, `gen` and `bench`
//! subcommands.
//!
//! Every command reads instance files in the formats of [`crate::format`]
//! and reports failures through [`CliError`], which maps onto the
//! process exit codes: `2` for input problems, `3` for exceeded size
//! caps, `4` for internal invariant violations.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use wmpc_core::assignment::{solve_drp_btnk, solve_drp_total};
use wmpc_core::branch_bound::{solve_drp_exact, SearchConfig};
use wmpc_core::dap::{
    build_splitter_graph, induced_transmission_for_indices, solve_dap_btnk_with, solve_dap_hard,
    solve_dap_hard_graph, solve_dap_total_with, terasort_baseline, DapInstance, DapSolution,
    DpConfig, HardBudget, SplitterGraph,
};
use wmpc_core::generate;
use wmpc_core::reductions::{
    kclique_to_selecting_partition, partition_to_drp_msr, selecting_partition_to_dap_msr,
    three_partition_to_drp_ssr, Graph, PartitionInstance, SelectingPartitionInstance,
    ThreePartitionInstance,
};
use wmpc_core::{
    brute_force_drp_with_cap, eval_costs, CostReport, DrpInstance, Error, Objective, Permutation,
};

use crate::format::{self, InstanceData, ParseError, Solution};
use crate::{BenchArgs, EvalArgs, GenCommand, ProblemKind, SolveArgs, SuiteKind};

/// A command failure, carrying enough context for the exit-code mapping.
#[derive(Debug)]
pub enum CliError {
    /// An error propagated from a solver or construction.
    Core(Error),
    /// An instance or solution file failed to parse.
    Parse { path: PathBuf, err: ParseError },
    /// A file could not be read or written.
    Io { path: PathBuf, err: std::io::Error },
    /// Flags do not combine into a runnable command.
    Usage(String),
    /// A produced solution failed its independent re-evaluation.
    SelfCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::SizeCap(_)) => 3,
            CliError::Core(Error::Internal(_)) | CliError::SelfCheck(_) => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Parse { path, err } => write!(f, "{}: {err}", path.display()),
            CliError::Io { path, err } => write!(f, "{}: {err}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::SelfCheck(msg) => write!(f, "solution failed re-evaluation: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn read_instance(path: &Path) -> Result<InstanceData, CliError> {
    let text = fs::read_to_string(path).map_err(|err| CliError::Io {
        path: path.to_path_buf(),
        err,
    })?;
    format::parse_instance(&text).map_err(|err| CliError::Parse {
        path: path.to_path_buf(),
        err,
    })
}

/// Writes `content` to `path` when given, otherwise to the stream.
fn write_output(
    path: Option<&Path>,
    content: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|err| CliError::Io {
            path: p.to_path_buf(),
            err,
        }),
        None => out.write_all(content.as_bytes()).map_err(|err| CliError::Io {
            path: PathBuf::from("(stdout)"),
            err,
        }),
    }
}

fn parse_list<T>(s: &str, flag: &str) -> Result<Vec<T>, CliError>
where
    T: FromStr,
    T::Err: fmt::Display,
{
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse()
                .map_err(|e| CliError::Usage(format!("bad {flag} entry {tok:?}: {e}")))
        })
        .collect()
}

fn parse_perm(s: &str) -> Result<Permutation, CliError> {
    let entries = parse_list::<usize>(s, "--perm")?;
    Permutation::from_one_based(&entries).map_err(CliError::from)
}

/// Evaluates `perm` over a transmission matrix induced on the given
/// cost structure.
fn eval_on(costs: &[Vec<u64>], t: Vec<Vec<u64>>, perm: &Permutation) -> Result<CostReport, Error> {
    let drp = DrpInstance::new(t, costs.to_vec())?;
    eval_costs(&drp, perm)
}

pub fn run_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let data = read_instance(&args.input)?;
    let solution = match (&data, args.problem) {
        (InstanceData::Drp(inst), ProblemKind::Drp) => solve_drp_file(inst, args)?,
        (InstanceData::Dap(inst), ProblemKind::Dap) => solve_dap_file(inst, args)?,
        (InstanceData::SpGraph(g), ProblemKind::Dap) => solve_sp_graph_file(g, args)?,
        (InstanceData::Sp(_), _) => {
            return Err(CliError::Usage(format!(
                "{} is a selection instance; turn it into a solvable form with \
                 `wmpc gen sp-dapmsr --input ...`",
                args.input.display()
            )))
        }
        (data, problem) => {
            return Err(CliError::Usage(format!(
                "--problem {} does not match the {} instance in {}",
                problem.as_str(),
                data.kind(),
                args.input.display()
            )))
        }
    };
    write_output(
        args.output.as_deref(),
        &format::render_solution(&solution),
        out,
    )
}

fn solve_drp_file(inst: &DrpInstance, args: &SolveArgs) -> Result<Solution, CliError> {
    let obj = args.objective;
    let (perm, value, proven_optimal) = if args.oracle {
        let (perm, value) = brute_force_drp_with_cap(inst, obj, args.brute_cap)?;
        (perm, value, true)
    } else {
        match obj {
            Objective::Total => {
                let (perm, value) = solve_drp_total(inst)?;
                (perm, value, true)
            }
            Objective::Btnk => {
                let (perm, value) = solve_drp_btnk(inst)?;
                (perm, value, true)
            }
            Objective::Msr | Objective::Ssr => {
                let cfg = SearchConfig {
                    node_cap: args.node_cap,
                    ..SearchConfig::default()
                };
                let sol = solve_drp_exact(inst, obj, &cfg)?;
                (sol.perm, sol.value, sol.proven_optimal)
            }
        }
    };
    let report = eval_costs(inst, &perm)?;
    if report.value(obj) != value {
        return Err(CliError::SelfCheck(format!(
            "solver reported {obj} = {value} but the assignment evaluates to {}",
            report.value(obj)
        )));
    }
    Ok(Solution {
        objective: obj,
        value,
        perm,
        splitters: None,
        send: report.send,
        rcv: report.rcv,
        proven_optimal,
    })
}

fn solve_dap_file(inst: &DapInstance, args: &SolveArgs) -> Result<Solution, CliError> {
    let obj = args.objective;
    let sol = if args.oracle {
        let g = build_splitter_graph(inst, Objective::Msr)?;
        oracle_over_paths(&g, obj, args.brute_cap)?
    } else {
        match obj {
            Objective::Total => solve_dap_total_with(inst, &dp_config(args))?,
            Objective::Btnk => solve_dap_btnk_with(inst, &dp_config(args))?,
            Objective::Msr | Objective::Ssr => solve_dap_hard(inst, obj, &walk_budget(args))?,
        }
    };
    let t = induced_transmission_for_indices(inst, &sol.splitters.indices)?;
    finish_dap_solution(inst.costs(), obj, sol, t)
}

fn solve_sp_graph_file(g: &SplitterGraph, args: &SolveArgs) -> Result<Solution, CliError> {
    let obj = args.objective;
    let sol = if args.oracle {
        oracle_over_paths(g, obj, args.brute_cap)?
    } else {
        match obj {
            Objective::Msr | Objective::Ssr => solve_dap_hard_graph(g, obj, &walk_budget(args))?,
            Objective::Total | Objective::Btnk => {
                return Err(CliError::Core(Error::InvalidArgument(format!(
                    "a splitter-graph file carries no scalar weights; solve msr or ssr \
                     on it, or pass --oracle to enumerate {obj}"
                ))))
            }
        }
    };
    let t = g.induced_transmission(&sol.splitters.indices)?;
    finish_dap_solution(g.costs(), obj, sol, t)
}

fn dp_config(args: &SolveArgs) -> DpConfig {
    DpConfig {
        max_machines: args.dp_max_machines,
    }
}

fn walk_budget(args: &SolveArgs) -> HardBudget {
    HardBudget {
        max_values: args.walk_max_values,
        max_machines: args.walk_max_machines,
        node_cap: args.node_cap,
    }
}

/// Exhaustive reference for allocation forms: every splitter path, each
/// priced by full permutation enumeration. Works for all four
/// objectives.
fn oracle_over_paths(
    g: &SplitterGraph,
    obj: Objective,
    brute_cap: usize,
) -> Result<DapSolution, Error> {
    let mut best: Option<DapSolution> = None;
    g.for_each_path(|cols| {
        let t = g.induced_transmission(cols)?;
        let drp = DrpInstance::new(t.clone(), g.costs().to_vec())?;
        let (perm, value) = brute_force_drp_with_cap(&drp, obj, brute_cap)?;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(DapSolution {
                splitters: g.selection(cols),
                perm,
                value,
                induced_t: t,
                proven_optimal: true,
            });
        }
        Ok(())
    })?;
    best.ok_or_else(|| Error::InvalidArgument("no feasible splitter selection".into()))
}

/// Re-evaluates an allocation solution independently and assembles the
/// output record.
fn finish_dap_solution(
    costs: &[Vec<u64>],
    obj: Objective,
    sol: DapSolution,
    rebuilt_t: Vec<Vec<u64>>,
) -> Result<Solution, CliError> {
    let report = eval_on(costs, rebuilt_t, &sol.perm)?;
    if report.value(obj) != sol.value {
        return Err(CliError::SelfCheck(format!(
            "solver reported {obj} = {} but splitters {:?} with assignment {} evaluate to {}",
            sol.value,
            sol.splitters.indices,
            sol.perm,
            report.value(obj)
        )));
    }
    Ok(Solution {
        objective: obj,
        value: sol.value,
        perm: sol.perm,
        splitters: Some(sol.splitters),
        send: report.send,
        rcv: report.rcv,
        proven_optimal: sol.proven_optimal,
    })
}

pub fn run_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let data = read_instance(&args.input)?;
    let perm = parse_perm(&args.perm)?;
    let report = match &data {
        InstanceData::Drp(inst) => {
            if args.splitters.is_some() {
                return Err(CliError::Usage(
                    "--splitters only applies to allocation instances".into(),
                ));
            }
            eval_costs(inst, &perm)?
        }
        InstanceData::Dap(inst) => {
            let indices = required_splitters(args)?;
            let t = induced_transmission_for_indices(inst, &indices)?;
            eval_on(inst.costs(), t, &perm)?
        }
        InstanceData::SpGraph(g) => {
            let indices = required_splitters(args)?;
            let t = g.induced_transmission(&indices)?;
            eval_on(g.costs(), t, &perm)?
        }
        InstanceData::Sp(_) => {
            return Err(CliError::Usage(
                "selection instances have no assignment to evaluate; convert with \
                 `wmpc gen sp-dapmsr --input ...`"
                    .into(),
            ))
        }
    };
    write_output(None, &format::render_report(&report), out)
}

fn required_splitters(args: &EvalArgs) -> Result<Vec<usize>, CliError> {
    let raw = args.splitters.as_deref().ok_or_else(|| {
        CliError::Usage("allocation instances need --splitters (1-based indices)".into())
    })?;
    parse_list::<usize>(raw, "--splitters")
}

pub fn run_gen(cmd: &GenCommand, out: &mut dyn Write) -> Result<(), CliError> {
    let (content, output) = match cmd {
        GenCommand::PartitionMsr { set, output } => {
            let items = parse_list::<u64>(set, "--set")?;
            let p = PartitionInstance::new(items)?;
            (format::serialize_drp(&partition_to_drp_msr(&p)), output)
        }
        GenCommand::ThreePartitionSsr { k, values, output } => {
            let items = parse_list::<u64>(values, "--values")?;
            if items.len() != 3 * k {
                return Err(CliError::Usage(format!(
                    "--k {k} needs {} values, got {}",
                    3 * k,
                    items.len()
                )));
            }
            let t3 = ThreePartitionInstance::new(items)?;
            (format::serialize_drp(&three_partition_to_drp_ssr(&t3)), output)
        }
        GenCommand::CliqueSp {
            edges,
            k,
            vertices,
            output,
        } => {
            let edge_list = parse_edges(edges)?;
            let vertices = match vertices {
                Some(v) => *v,
                None => edge_list
                    .iter()
                    .map(|&(u, v)| u.max(v))
                    .max()
                    .ok_or_else(|| {
                        CliError::Usage(
                            "an edgeless graph needs an explicit --vertices count".into(),
                        )
                    })?,
            };
            let g = Graph::new(vertices, edge_list)?;
            let sp = kclique_to_selecting_partition(&g, *k)?;
            (format::serialize_sp(&sp), output)
        }
        GenCommand::SpDapmsr {
            set,
            input,
            k,
            output,
        } => {
            let sp = load_selection(set.as_deref(), input.as_deref(), *k)?;
            let g = selecting_partition_to_dap_msr(&sp)?;
            (format::serialize_sp_graph(&g), output)
        }
        GenCommand::RandomDrp {
            n,
            max_entry,
            seed,
            output,
        } => (
            format::serialize_drp(&generate::random_drp(*n, *max_entry, *seed)?),
            output,
        ),
        GenCommand::RackDrp {
            racks,
            per_rack,
            intra,
            inter,
            max_t,
            seed,
            output,
        } => (
            format::serialize_drp(&generate::rack_drp(
                *racks, *per_rack, *intra, *inter, *max_t, *seed,
            )?),
            output,
        ),
        GenCommand::RandomDap {
            n,
            values,
            max_value,
            max_cost,
            seed,
            output,
        } => (
            format::serialize_dap(&generate::random_dap(
                *n, *values, *max_value, *max_cost, *seed,
            )?),
            output,
        ),
        GenCommand::InverseDap {
            n,
            per_machine,
            max_cost,
            seed,
            output,
        } => (
            format::serialize_dap(&generate::inverse_sorted_dap(
                *n,
                *per_machine,
                *max_cost,
                *seed,
            )?),
            output,
        ),
        GenCommand::SortedDap {
            n,
            per_machine,
            max_cost,
            seed,
            output,
        } => (
            format::serialize_dap(&generate::sorted_dap(*n, *per_machine, *max_cost, *seed)?),
            output,
        ),
    };
    write_output(output.as_deref(), &content, out)
}

fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let (u, v) = tok
                .split_once('-')
                .ok_or_else(|| bad_edge(tok, "expected two vertices joined by -"))?;
            let u = u.trim().parse().map_err(|e| bad_edge(tok, e))?;
            let v = v.trim().parse().map_err(|e| bad_edge(tok, e))?;
            Ok((u, v))
        })
        .collect()
}

fn bad_edge(tok: &str, why: impl fmt::Display) -> CliError {
    CliError::Usage(format!("bad --edges entry {tok:?}: {why}"))
}

fn load_selection(
    set: Option<&str>,
    input: Option<&Path>,
    k: Option<usize>,
) -> Result<SelectingPartitionInstance, CliError> {
    match (set, input) {
        (Some(set), None) => {
            let values = parse_list::<u64>(set, "--set")?;
            let k = k.ok_or_else(|| {
                CliError::Usage("--set needs --k, the number of items to select".into())
            })?;
            Ok(SelectingPartitionInstance::from_u64(&values, k)?)
        }
        (None, Some(path)) => {
            let sp = match read_instance(path)? {
                InstanceData::Sp(sp) => sp,
                other => {
                    return Err(CliError::Usage(format!(
                        "{} holds a {} instance; sp-dapmsr needs an sp file",
                        path.display(),
                        other.kind()
                    )))
                }
            };
            if let Some(k) = k {
                if k != sp.k() {
                    return Err(CliError::Usage(format!(
                        "--k {k} contradicts the selection size {} recorded in {}",
                        sp.k(),
                        path.display()
                    )));
                }
            }
            Ok(sp)
        }
        _ => Err(CliError::Usage(
            "provide exactly one of --set or --input".into(),
        )),
    }
}

/// One line of the bench table.
struct BenchRow {
    id: String,
    n: usize,
    num_values: Option<usize>,
    objective: Objective,
    outcome: Result<(u64, u64), Error>,
    millis: f64,
}

impl BenchRow {
    fn render(&self) -> String {
        let num_values = match self.num_values {
            Some(v) => v.to_string(),
            None => "-".into(),
        };
        let (optimized, baseline, ratio, status) = match &self.outcome {
            Ok((opt, base)) => {
                let ratio = if *opt > 0 {
                    format!("{:.3}", *base as f64 / *opt as f64)
                } else if *base > 0 {
                    "inf".into()
                } else {
                    "1.000".into()
                };
                (opt.to_string(), base.to_string(), ratio, "ok".into())
            }
            Err(e) => {
                let msg = e.to_string().replace(['\t', '\n'], " ");
                ("-".into(), "-".into(), "-".into(), msg)
            }
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\t{}\n",
            self.id, self.n, num_values, self.objective, optimized, baseline, ratio, self.millis,
            status
        )
    }
}

pub fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let header = "instance\tn\tN\tobjective\toptimized\tbaseline\tratio\tmillis\tstatus\n";
    write_output(None, header, out)?;
    for trial in 0..args.count {
        let seed = args.seed.wrapping_add(trial as u64);
        let row = match args.suite {
            SuiteKind::RandomDrp => {
                let inst = generate::random_drp(args.n, args.max_entry, seed)?;
                drp_row(format!("random-drp-{trial:03}"), &inst, args.objective)
            }
            SuiteKind::RackDrp => {
                let inst = generate::rack_drp(
                    args.racks,
                    args.per_rack,
                    args.intra,
                    args.inter,
                    args.max_t,
                    seed,
                )?;
                drp_row(format!("rack-drp-{trial:03}"), &inst, args.objective)
            }
            SuiteKind::RandomDap => {
                let inst =
                    generate::random_dap(args.n, args.values, args.max_value, args.max_cost, seed)?;
                dap_row(format!("random-dap-{trial:03}"), &inst, args.objective)
            }
            SuiteKind::InverseDap => {
                let inst =
                    generate::inverse_sorted_dap(args.n, args.per_machine, args.max_cost.max(1), seed)?;
                dap_row(format!("inverse-dap-{trial:03}"), &inst, args.objective)
            }
            SuiteKind::SortedDap => {
                let inst = generate::sorted_dap(args.n, args.per_machine, args.max_cost, seed)?;
                dap_row(format!("sorted-dap-{trial:03}"), &inst, args.objective)
            }
        };
        write_output(None, &row.render(), out)?;
    }
    Ok(())
}

fn drp_row(id: String, inst: &DrpInstance, obj: Objective) -> BenchRow {
    let start = Instant::now();
    let outcome = (|| {
        let optimized = match obj {
            Objective::Total => solve_drp_total(inst)?.1,
            Objective::Btnk => solve_drp_btnk(inst)?.1,
            Objective::Msr | Objective::Ssr => {
                solve_drp_exact(inst, obj, &SearchConfig::default())?.value
            }
        };
        let baseline = eval_costs(inst, &Permutation::identity(inst.n()))?.value(obj);
        Ok((optimized, baseline))
    })();
    BenchRow {
        id,
        n: inst.n(),
        num_values: None,
        objective: obj,
        outcome,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn dap_row(id: String, inst: &DapInstance, obj: Objective) -> BenchRow {
    let start = Instant::now();
    let outcome = (|| {
        let optimized = match obj {
            Objective::Total => solve_dap_total_with(inst, &DpConfig::default())?.value,
            Objective::Btnk => solve_dap_btnk_with(inst, &DpConfig::default())?.value,
            Objective::Msr | Objective::Ssr => {
                solve_dap_hard(inst, obj, &HardBudget::default())?.value
            }
        };
        let baseline = terasort_baseline(inst)?.value(obj);
        Ok((optimized, baseline))
    })();
    BenchRow {
        id,
        n: inst.n(),
        num_values: Some(inst.num_values()),
        objective: obj,
        outcome,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}
