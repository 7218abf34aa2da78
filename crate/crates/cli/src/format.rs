//! Line-oriented text formats for instances and solutions.
//!
//! Every instance file starts with a kind token on the first line —
//! `drp`, `dap`, `sp` or `sp-graph` — followed by a header line of
//! counts and labeled blocks of whitespace-separated integers. Blank
//! lines and lines starting with `#` are ignored everywhere. Parse
//! failures carry the 1-based line number of the offending input.
//!
//! ```text
//! drp                      dap                      sp
//! <n>                      <n> <N>                  <n> <k>
//! T:                       S1: <values...>          S: <items...>
//! <n rows of n entries>    ...
//! C:                       Sn: <values...>
//! <n rows of n entries>    C:
//!                          <n rows of n entries>
//! ```
//!
//! `sp-graph` files carry a splitter graph with explicit edge vectors:
//! header `<n> <M>` (machines, candidate columns), a `V:` line of `M`
//! candidate values, an `L:` line of `n - 1` per-level column caps, the
//! `C:` cost block, and for each level `i` a `Wi:` block of `M + 1` rows
//! (one per target column, the last for the sink) of `n` entries each.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use wmpc_core::dap::{DapInstance, SplitterGraph, SplitterSelection};
use wmpc_core::reductions::SelectingPartitionInstance;
use wmpc_core::{CostReport, DrpInstance, Objective, Permutation};

/// A parse failure at a specific source line.
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

/// A parsed instance of any file kind.
pub enum InstanceData {
    Drp(DrpInstance),
    Dap(DapInstance),
    Sp(SelectingPartitionInstance),
    SpGraph(SplitterGraph),
}

impl fmt::Debug for InstanceData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InstanceData({})", self.kind())
    }
}

impl InstanceData {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceData::Drp(_) => "drp",
            InstanceData::Dap(_) => "dap",
            InstanceData::Sp(_) => "sp",
            InstanceData::SpGraph(_) => "sp-graph",
        }
    }
}

/// Significant lines of the input, with their original line numbers.
struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    total: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut total = 0;
        for (i, raw) in text.lines().enumerate() {
            total = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            lines.push((i + 1, trimmed));
        }
        Cursor {
            lines,
            pos: 0,
            total,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        match self.lines.get(self.pos) {
            Some(&entry) => {
                self.pos += 1;
                Ok(entry)
            }
            None => Err(err(
                self.total + 1,
                format!("expected {what}, found end of file"),
            )),
        }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some((line, text)) => Err(err(line, format!("unexpected trailing content {text:?}"))),
            None => Ok(()),
        }
    }
}

fn fields<T>(line: usize, text: &str, what: &str) -> Result<Vec<T>, ParseError>
where
    T: FromStr,
    T::Err: fmt::Display,
{
    text.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|e| err(line, format!("bad {what} {tok:?}: {e}")))
        })
        .collect()
}

fn fixed_fields<T>(line: usize, text: &str, count: usize, what: &str) -> Result<Vec<T>, ParseError>
where
    T: FromStr,
    T::Err: fmt::Display,
{
    let parsed = fields(line, text, what)?;
    if parsed.len() != count {
        return Err(err(
            line,
            format!("expected {count} {what} entries, got {}", parsed.len()),
        ));
    }
    Ok(parsed)
}

/// Reads a `label:` line and returns the text after the label.
fn labeled<'a>(cur: &mut Cursor<'a>, label: &str) -> Result<(usize, &'a str), ParseError> {
    let (line, text) = cur.next(&format!("a {label} block"))?;
    match text.strip_prefix(label) {
        Some(rest) => Ok((line, rest.trim())),
        None => Err(err(line, format!("expected {label} here, found {text:?}"))),
    }
}

/// Reads a `label:` line followed by `rows` lines of `cols` entries.
fn rows_block(
    cur: &mut Cursor<'_>,
    label: &str,
    rows: usize,
    cols: usize,
) -> Result<Vec<(usize, Vec<u64>)>, ParseError> {
    let (line, rest) = labeled(cur, label)?;
    if !rest.is_empty() {
        return Err(err(line, format!("rows of {label} start on the next line")));
    }
    let mut out = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (row_line, text) = cur.next(&format!("a row of {label}"))?;
        out.push((row_line, fixed_fields(row_line, text, cols, "matrix")?));
    }
    Ok(out)
}

fn square_matrix(cur: &mut Cursor<'_>, label: &str, n: usize) -> Result<Vec<Vec<u64>>, ParseError> {
    Ok(rows_block(cur, label, n, n)?
        .into_iter()
        .map(|(_, row)| row)
        .collect())
}

/// Reads the `C:` block, checking the zero diagonal with precise lines.
fn cost_matrix(cur: &mut Cursor<'_>, n: usize) -> Result<Vec<Vec<u64>>, ParseError> {
    let rows = rows_block(cur, "C:", n, n)?;
    for (i, (line, row)) in rows.iter().enumerate() {
        if row[i] != 0 {
            return Err(err(
                *line,
                format!("C[{},{}] must be 0, got {}", i + 1, i + 1, row[i]),
            ));
        }
    }
    Ok(rows.into_iter().map(|(_, row)| row).collect())
}

pub fn parse_instance(text: &str) -> Result<InstanceData, ParseError> {
    let mut cur = Cursor::new(text);
    let (kind_line, kind) = cur.next("an instance kind line")?;
    match kind {
        "drp" => parse_drp(&mut cur),
        "dap" => parse_dap(&mut cur),
        "sp" => parse_sp(&mut cur),
        "sp-graph" => parse_sp_graph(&mut cur),
        other => Err(err(
            kind_line,
            format!("unknown instance kind {other:?}; expected drp, dap, sp or sp-graph"),
        )),
    }
}

fn parse_drp(cur: &mut Cursor<'_>) -> Result<InstanceData, ParseError> {
    let (header, text) = cur.next("the machine count")?;
    let n = fixed_fields::<usize>(header, text, 1, "count")?[0];
    if n == 0 {
        return Err(err(header, "need at least one machine"));
    }
    let t = square_matrix(cur, "T:", n)?;
    let c = cost_matrix(cur, n)?;
    cur.finish()?;
    DrpInstance::new(t, c)
        .map(InstanceData::Drp)
        .map_err(|e| err(header, e.to_string()))
}

fn parse_dap(cur: &mut Cursor<'_>) -> Result<InstanceData, ParseError> {
    let (header, text) = cur.next("the machine and value counts")?;
    let counts = fixed_fields::<usize>(header, text, 2, "count")?;
    let (n, total) = (counts[0], counts[1]);
    if n < 2 {
        return Err(err(header, "allocation needs at least two machines"));
    }
    let mut datasets = Vec::with_capacity(n);
    for i in 1..=n {
        let (line, rest) = labeled(cur, &format!("S{i}:"))?;
        datasets.push(fields::<i64>(line, rest, "value")?);
    }
    let held: usize = datasets.iter().map(Vec::len).sum();
    if held != total {
        return Err(err(
            header,
            format!("header declares {total} values but the datasets hold {held}"),
        ));
    }
    let c = cost_matrix(cur, n)?;
    cur.finish()?;
    DapInstance::new(datasets, c)
        .map(InstanceData::Dap)
        .map_err(|e| err(header, e.to_string()))
}

fn parse_sp(cur: &mut Cursor<'_>) -> Result<InstanceData, ParseError> {
    let (header, text) = cur.next("the item and selection counts")?;
    let counts = fixed_fields::<usize>(header, text, 2, "count")?;
    let (n, k) = (counts[0], counts[1]);
    let (line, rest) = labeled(cur, "S:")?;
    let items = fixed_fields::<BigUint>(line, rest, n, "item")?;
    cur.finish()?;
    SelectingPartitionInstance::new(items, k)
        .map(InstanceData::Sp)
        .map_err(|e| err(header, e.to_string()))
}

fn parse_sp_graph(cur: &mut Cursor<'_>) -> Result<InstanceData, ParseError> {
    let (header, text) = cur.next("the machine and column counts")?;
    let counts = fixed_fields::<usize>(header, text, 2, "count")?;
    let (n, cols) = (counts[0], counts[1]);
    if n < 2 {
        return Err(err(header, "a splitter graph needs at least two levels"));
    }
    let (vline, rest) = labeled(cur, "V:")?;
    let values = fixed_fields::<i64>(vline, rest, cols, "value")?;
    let (lline, rest) = labeled(cur, "L:")?;
    let level_max_col = fixed_fields::<usize>(lline, rest, n - 1, "column cap")?;
    if let Some(bad) = level_max_col.iter().find(|&&m| m > cols) {
        return Err(err(
            lline,
            format!("column cap {bad} exceeds the {cols} candidate columns"),
        ));
    }
    let c = cost_matrix(cur, n)?;
    let mut vectors = Vec::with_capacity(n);
    for i in 1..=n {
        let rows = rows_block(cur, &format!("W{i}:"), cols + 1, n)?;
        vectors.push(rows.into_iter().map(|(_, row)| row).collect());
    }
    cur.finish()?;
    SplitterGraph::from_vectors(values, c, vectors, level_max_col)
        .map(InstanceData::SpGraph)
        .map_err(|e| err(header, e.to_string()))
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn push_rows(out: &mut String, rows: &[Vec<u64>]) {
    for row in rows {
        out.push_str(&join(row));
        out.push('\n');
    }
}

fn push_inline(out: &mut String, label: &str, body: &str) {
    out.push_str(label);
    if !body.is_empty() {
        out.push(' ');
        out.push_str(body);
    }
    out.push('\n');
}

pub fn serialize_drp(inst: &DrpInstance) -> String {
    let mut out = String::from("drp\n");
    out.push_str(&format!("{}\n", inst.n()));
    out.push_str("T:\n");
    push_rows(&mut out, inst.transmission());
    out.push_str("C:\n");
    push_rows(&mut out, inst.costs());
    out
}

pub fn serialize_dap(inst: &DapInstance) -> String {
    let mut out = String::from("dap\n");
    out.push_str(&format!("{} {}\n", inst.n(), inst.num_values()));
    for (i, dataset) in inst.datasets().iter().enumerate() {
        push_inline(&mut out, &format!("S{}:", i + 1), &join(dataset));
    }
    out.push_str("C:\n");
    push_rows(&mut out, inst.costs());
    out
}

pub fn serialize_sp(sp: &SelectingPartitionInstance) -> String {
    let mut out = String::from("sp\n");
    out.push_str(&format!("{} {}\n", sp.n(), sp.k()));
    push_inline(&mut out, "S:", &join(sp.items()));
    out
}

/// Serializes a splitter graph built from explicit edge vectors. Graphs
/// derived from datasets should be stored as `dap` files instead; their
/// edge vectors depend on the source column and do not survive this
/// per-target flattening.
pub fn serialize_sp_graph(g: &SplitterGraph) -> String {
    let n = g.n();
    let cols = g.num_cols();
    let mut out = String::from("sp-graph\n");
    out.push_str(&format!("{n} {cols}\n"));
    push_inline(&mut out, "V:", &join(g.values()));
    let caps: Vec<usize> = (1..n).map(|level| g.max_col(level)).collect();
    push_inline(&mut out, "L:", &join(&caps));
    out.push_str("C:\n");
    push_rows(&mut out, g.costs());
    for level in 1..=n {
        out.push_str(&format!("W{level}:\n"));
        for target in 1..=cols + 1 {
            out.push_str(&join(&g.vector_weight(level, 0, target)));
            out.push('\n');
        }
    }
    out
}

/// A solved assignment as written to and read from solution files.
#[derive(Debug)]
pub struct Solution {
    pub objective: Objective,
    pub value: u64,
    pub perm: Permutation,
    pub splitters: Option<SplitterSelection>,
    pub send: Vec<u64>,
    pub rcv: Vec<u64>,
    pub proven_optimal: bool,
}

pub fn render_solution(sol: &Solution) -> String {
    let mut out = String::new();
    out.push_str(&format!("objective: {}\n", sol.objective));
    out.push_str(&format!("value: {}\n", sol.value));
    out.push_str(&format!("perm: {}\n", sol.perm));
    if let Some(splitters) = &sol.splitters {
        out.push_str(&format!("splitters: {}\n", join(&splitters.values)));
        out.push_str(&format!(
            "splitter_indices: {}\n",
            join(&splitters.indices)
        ));
    }
    out.push_str(&format!("send: {}\n", join(&sol.send)));
    out.push_str(&format!("rcv: {}\n", join(&sol.rcv)));
    out.push_str(&format!("proven_optimal: {}\n", sol.proven_optimal));
    out
}

/// Inverse of [`render_solution`]; exercised by the round-trip tests.
#[cfg_attr(not(test), allow(dead_code))]
pub fn parse_solution(text: &str) -> Result<Solution, ParseError> {
    let mut cur = Cursor::new(text);
    let (line, rest) = labeled(&mut cur, "objective:")?;
    let objective = Objective::from_str(rest).map_err(|e| err(line, e.to_string()))?;
    let (line, rest) = labeled(&mut cur, "value:")?;
    let value = fixed_fields::<u64>(line, rest, 1, "value")?[0];
    let (line, rest) = labeled(&mut cur, "perm:")?;
    let entries = fields::<usize>(line, rest, "permutation entry")?;
    let perm = Permutation::from_one_based(&entries).map_err(|e| err(line, e.to_string()))?;
    let splitters = match cur.peek() {
        Some((_, text)) if text.starts_with("splitters:") => {
            let (line, rest) = labeled(&mut cur, "splitters:")?;
            let values = fields::<i64>(line, rest, "splitter value")?;
            let (iline, rest) = labeled(&mut cur, "splitter_indices:")?;
            let indices = fixed_fields::<usize>(iline, rest, values.len(), "splitter index")?;
            Some(SplitterSelection { indices, values })
        }
        _ => None,
    };
    let (line, rest) = labeled(&mut cur, "send:")?;
    let send = fixed_fields::<u64>(line, rest, perm.n(), "send cost")?;
    let (line, rest) = labeled(&mut cur, "rcv:")?;
    let rcv = fixed_fields::<u64>(line, rest, perm.n(), "receive cost")?;
    let (line, rest) = labeled(&mut cur, "proven_optimal:")?;
    let proven_optimal = rest
        .parse::<bool>()
        .map_err(|e| err(line, format!("bad flag {rest:?}: {e}")))?;
    cur.finish()?;
    Ok(Solution {
        objective,
        value,
        perm,
        splitters,
        send,
        rcv,
        proven_optimal,
    })
}

/// Renders the full per-machine cost breakdown printed by `eval`.
pub fn render_report(report: &CostReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("send: {}\n", join(&report.send)));
    out.push_str(&format!("rcv: {}\n", join(&report.rcv)));
    out.push_str(&format!("total: {}\n", report.total));
    out.push_str(&format!("btnk: {}\n", report.btnk));
    out.push_str(&format!("msr: {}\n", report.msr));
    out.push_str(&format!("ssr: {}\n", report.ssr));
    out
}
