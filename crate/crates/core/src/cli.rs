//! The `turan` command line: graph6 in, JSON reports out.
//!
//! Exit codes: 0 success, 1 violations found, 2 usage or input error,
//! 3 a budget stopped the search before it finished.

use std::ffi::OsString;
use std::io::{BufRead, BufReader, Read, Write};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{crossover_facts, max_planar_edges, turan_edge_cap, turan_verdict};
use crate::enumerate::{
    enumerate, ex_search, verify_hypothesis_classes, verify_small_n_claim, verify_triangle_window, Budget, EnumOptions,
    EnumerationConstraints, SearchMode,
};
use crate::forbid::{find_double_star, DoubleStar};
use crate::graph::Graph;
use crate::graph6;
use crate::planarity::is_planar;
use crate::report::{to_value, Report};
use crate::structure::{hypothesis_class, FeatureKind};
use crate::witness::icosahedron;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

/// Prefix of the summary line that closes a graph6 stream.
pub const SUMMARY_SENTINEL: &str = "#summary ";

#[derive(Parser, Debug)]
#[command(name = "turan", version, about = "Planar Turán numbers of double stars")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound verdict for n vertices and optionally m edges.
    Bound { n: u64, m: Option<u64> },
    /// Per-line verdicts for a graph6 file ("-" reads stdin).
    Check {
        file: String,
        #[arg(long, default_value = "2,5", value_parser = parse_pattern)]
        pattern: DoubleStar,
    },
    /// A built-in graph with its verification report.
    Witness {
        #[arg(value_enum)]
        which: WitnessKind,
    },
    /// Stream every graph meeting the constraints, one graph6 line each.
    Enumerate(EnumerateArgs),
    /// Largest edge count of a host graph avoiding the pattern.
    Ex(ExArgs),
    /// Exhaustive lemma checks.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WitnessKind {
    Icosahedron,
}

#[derive(Args, Debug, Clone, Copy)]
struct RunArgs {
    /// Node budget (falls back to TURAN_BUDGET_NODES).
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Wall-clock budget in seconds (falls back to TURAN_BUDGET_SECONDS).
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Run on one thread; output order is then reproducible.
    #[arg(long)]
    sequential: bool,
}

impl RunArgs {
    fn options(&self) -> EnumOptions {
        let env = Budget::from_env();
        EnumOptions {
            budget: Budget {
                max_nodes: self.budget_nodes.or(env.max_nodes),
                max_seconds: self.budget_seconds.or(env.max_seconds),
            },
            parallel: !self.sequential,
            prune: true,
        }
    }
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    min_deg: usize,
    #[arg(long)]
    max_deg: Option<usize>,
    #[arg(long)]
    planar: bool,
    #[arg(long)]
    bridgeless: bool,
    #[arg(long)]
    connected: bool,
    #[arg(long, value_parser = parse_pattern)]
    forbid: Vec<DoubleStar>,
    #[arg(long)]
    require_feature: Option<FeatureKind>,
    #[arg(long)]
    forbid_feature: Vec<FeatureKind>,
    /// Check constraints on complete graphs only.
    #[arg(long)]
    no_prune: bool,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Exhaustive,
    Bnb,
}

#[derive(Args, Debug)]
struct ExArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_pattern)]
    forbid: DoubleStar,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    /// Search all graphs instead of planar ones.
    #[arg(long)]
    nonplanar: bool,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// The four degree-6 classes against the edge bound.
    Lemma3 {
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Degree-6 vertices have a neighbour of degree at most 4.
    ClaimDegree4 {
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// 3n − 6 against the edge cap for small n.
    SmallN {
        #[arg(long, default_value_t = 12)]
        nmax: u64,
    },
    /// Common-neighbour windows on edges at a degree-6 vertex.
    TriangleWindow {
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn parse_pattern(s: &str) -> Result<DoubleStar, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected m,n, got {s:?}"))?;
    let m: usize = a.trim().parse().map_err(|e| format!("bad m in {s:?}: {e}"))?;
    let n: usize = b.trim().parse().map_err(|e| format!("bad n in {s:?}: {e}"))?;
    if m == 0 || n == 0 {
        return Err(format!("leaf counts must be positive, got {s:?}"));
    }
    Ok(DoubleStar::new(m, n))
}

/// Input or usage failure after argument parsing succeeded.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and writes to `out`.
/// Diagnostics go to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(cli.command, out) {
        Ok((mut report, code)) => {
            report.runtime_ms = start.elapsed().as_millis() as u64;
            let _ = writeln!(out, "{}", report.to_json());
            let _ = out.flush();
            code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut (dyn Write + Send)) -> Result<(Report, i32), UsageError> {
    match cmd {
        Command::Bound { n, m } => bound(n, m),
        Command::Check { file, pattern } => check(&file, pattern),
        Command::Witness { which: WitnessKind::Icosahedron } => Ok((witness_report(), EXIT_OK)),
        Command::Enumerate(a) => enumerate_cmd(a, out),
        Command::Ex(a) => ex(a),
        Command::Verify { what } => verify(what),
    }
}

fn exhaustive_code(exhaustive: bool, violations: u64) -> i32 {
    if violations > 0 {
        EXIT_VIOLATION
    } else if !exhaustive {
        EXIT_TRUNCATED
    } else {
        EXIT_OK
    }
}

fn bound(n: u64, m: Option<u64>) -> Result<(Report, i32), UsageError> {
    let cap = turan_edge_cap(n)?;
    let planar_max = max_planar_edges(n)?;
    let verdict = m.map(|m| turan_verdict(n, m)).transpose()?;
    let code = if verdict.is_some_and(|v| !v.satisfied) { EXIT_VIOLATION } else { EXIT_OK };
    let results = json!({
        "edge_cap": cap,
        "max_planar_edges": planar_max,
        "verdict": verdict,
        "crossover": crossover_facts(),
    });
    Ok((Report::new("bound", json!({ "n": n, "m": m }), results), code))
}

fn graph_facts(g: &Graph, pattern: DoubleStar) -> Value {
    let witness = find_double_star(g, pattern);
    let verdict = (g.n() > 0).then(|| turan_verdict(g.n() as u64, g.m() as u64).ok()).flatten();
    json!({
        "n": g.n(),
        "m": g.m(),
        "maxDeg": g.max_degree(),
        "minDeg": g.min_degree(),
        "planar": is_planar(g),
        "free": witness.is_none(),
        "witness": witness.map(|w| json!({
            "backbone": [w.backbone.0, w.backbone.1],
            "leaves_u": w.leaves_u.to_vec(),
            "leaves_v": w.leaves_v.to_vec(),
        })),
        "degree_histogram": g.degree_histogram().counts().iter().map(|(d, c)| (d.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "flags": hypothesis_class(g),
        "bound": verdict,
    })
}

fn check(file: &str, pattern: DoubleStar) -> Result<(Report, i32), UsageError> {
    let reader: Box<dyn Read> = if file == "-" {
        Box::new(std::io::stdin())
    } else {
        Box::new(std::fs::File::open(file).map_err(|e| UsageError(format!("cannot read {file}: {e}")))?)
    };
    let mut graphs = Vec::new();
    let mut code = EXIT_OK;
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|e| UsageError(format!("cannot read {file}: {e}")))?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let g = graph6::decode(&line).map_err(|e| UsageError(format!("line {}: {e}", i + 1)))?;
        let mut facts = graph_facts(&g, pattern);
        if facts["free"] == Value::Bool(false) {
            code = EXIT_VIOLATION;
        }
        facts["line"] = json!(i + 1);
        facts["graph6"] = json!(line.trim());
        graphs.push(facts);
    }
    let inputs = json!({ "file": file, "pattern": [pattern.m, pattern.n] });
    Ok((Report::new("check", inputs, json!({ "graphs": graphs })), code))
}

/// The icosahedron with every fact that certifies the tight case.
pub fn witness_report() -> Report {
    let g = icosahedron();
    let mut facts = graph_facts(&g, DoubleStar::S25);
    facts["graph6"] = json!(graph6::encode(&g));
    Report::new("witness", json!({ "which": "icosahedron" }), facts)
}

fn enumerate_cmd(a: EnumerateArgs, out: &mut (dyn Write + Send)) -> Result<(Report, i32), UsageError> {
    let c = EnumerationConstraints {
        n: a.n,
        min_degree: a.min_deg,
        max_degree: a.max_deg.unwrap_or(crate::graph::MAX_VERTICES - 1),
        require_connected: a.connected,
        require_bridgeless: a.bridgeless,
        require_planar: a.planar,
        forbid: a.forbid,
        require_feature: a.require_feature,
        forbid_feature: a.forbid_feature,
    };
    let opts = EnumOptions { prune: !a.no_prune, ..a.run.options() };
    let sink = Mutex::new(out);
    let summary = enumerate(&c, &opts, |g| {
        let line = graph6::encode(g);
        let mut w = sink.lock().unwrap();
        let _ = writeln!(w, "{line}");
    })?;
    let out = sink.into_inner().unwrap();
    let _ = write!(out, "{SUMMARY_SENTINEL}");
    let report =
        Report::new("enumerate", json!({ "constraints": c, "budget": opts.budget, "prune": opts.prune }), summary)
            .with_exhaustive(summary.exhaustive);
    Ok((report, exhaustive_code(summary.exhaustive, 0)))
}

fn ex(a: ExArgs) -> Result<(Report, i32), UsageError> {
    let mode = match a.mode {
        ModeArg::Exhaustive => SearchMode::Exhaustive,
        ModeArg::Bnb => SearchMode::BranchAndBound,
    };
    let opts = a.run.options();
    let record = ex_search(a.n, a.forbid, !a.nonplanar, mode, &opts)?;
    let inputs = json!({ "n": a.n, "forbid": [a.forbid.m, a.forbid.n], "mode": mode, "planar": !a.nonplanar, "budget": opts.budget });
    let code = exhaustive_code(record.exhaustive, 0);
    Ok((Report::new("ex", inputs, &record).with_exhaustive(record.exhaustive), code))
}

fn verify(what: VerifyCommand) -> Result<(Report, i32), UsageError> {
    match what {
        VerifyCommand::Lemma3 { nmax, run } => {
            let (l, _) = verify_hypothesis_classes(nmax, &run.options())?;
            let violations = l.violations + l.s656_without_66;
            let code = exhaustive_code(l.exhaustive, violations);
            Ok((Report::new("verify lemma3", json!({ "nmax": nmax }), &l).with_exhaustive(l.exhaustive), code))
        }
        VerifyCommand::ClaimDegree4 { nmax, run } => {
            let (_, c) = verify_hypothesis_classes(nmax, &run.options())?;
            let violations = c.violations + u64::from(!c.six_dominated_holds);
            let code = exhaustive_code(c.exhaustive, violations);
            Ok((Report::new("verify claim-degree4", json!({ "nmax": nmax }), &c).with_exhaustive(c.exhaustive), code))
        }
        VerifyCommand::SmallN { nmax } => {
            let r = verify_small_n_claim(nmax)?;
            // only the claimed range counts toward the exit code
            let failed = r.rows.iter().filter(|row| row.n <= 12 && !row.holds).count() as u64;
            let code = exhaustive_code(true, failed + u64::from(!r.fails_at_13));
            Ok((Report::new("verify small-n", json!({ "nmax": nmax }), to_value(&r)), code))
        }
        VerifyCommand::TriangleWindow { nmax, run } => {
            let r = verify_triangle_window(nmax, &run.options())?;
            let code = exhaustive_code(r.exhaustive, r.violations);
            Ok((Report::new("verify triangle-window", json!({ "nmax": nmax }), &r).with_exhaustive(r.exhaustive), code))
        }
    }
}
