use std::fs;
use std::io::{self, BufRead};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use prodlabel::constructive::{label_generic, label_total, ConstructionError};
use prodlabel::enumerate::{graphs, EnumOptions};
use prodlabel::graph::{parse_graph6, to_graph6};
use prodlabel::labelling::{conflicts, LabellingJson};
use prodlabel::oracle::{chi_p, forest_two_labelling, verify_regular_via_multiset, OracleError};
use prodlabel::{Budget, Graph, Requirement};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, EXIT_ANOMALY, EXIT_BUDGET, EXIT_OK, EXIT_USAGE};
use crate::oracle::BudgetArgs;
use crate::report::{GraphInfo, Report, TOTAL};

pub const MAX_BUILTIN_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// chi_p <= 3 by exhaustive search (nice graphs only)
    P123,
    /// a 2-labelling whose classes are all forests
    WeakForest,
    /// the generic construction meets its S_1-matching guarantee
    #[value(name = "mult123-via-alg")]
    Mult123ViaAlg,
    /// the total construction is total p-proper
    Total,
    /// on nice regular graphs, an m-proper 3-labelling is p-proper
    RegularObs,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::P123 => "p123",
            Check::WeakForest => "weak-forest",
            Check::Mult123ViaAlg => "mult123-via-alg",
            Check::Total => "total",
            Check::RegularObs => "regular-obs",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    /// Use the built-in enumerator (connected graphs on 1..=N vertices)
    /// instead of reading graph6 lines from stdin.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// CSV destination (default: stdout).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Directory receiving one JSON report per anomaly.
    #[arg(long, default_value = "sweep-anomalies")]
    pub anomaly_dir: PathBuf,
    /// Exit nonzero if any input line had to be skipped.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// One CSV row. Columns: id, graph6, n, m, verdict, value, nodes, ms.
#[derive(Debug, Serialize)]
struct Row {
    id: usize,
    graph6: String,
    n: Option<usize>,
    m: Option<usize>,
    verdict: String,
    value: String,
    nodes: u64,
    ms: f64,
}

#[derive(Debug, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Budget,
    Skipped(&'static str),
    Malformed,
}

impl Verdict {
    fn text(&self) -> String {
        match self {
            Verdict::Pass => "pass".into(),
            Verdict::Fail => "fail".into(),
            Verdict::Budget => "budget".into(),
            Verdict::Skipped(why) => format!("skipped: {why}"),
            Verdict::Malformed => "skipped: malformed".into(),
        }
    }
}

struct Eval {
    verdict: Verdict,
    value: String,
    nodes: u64,
    anomaly: Option<Report>,
}

impl Eval {
    fn new(verdict: Verdict, value: impl Into<String>, nodes: u64) -> Self {
        Eval {
            verdict,
            value: value.into(),
            nodes,
            anomaly: None,
        }
    }
}

fn anomaly(check: Check, g: &Graph, labelling: Option<LabellingJson>, error: String) -> Report {
    let mut r = Report::new("sweep");
    r.algorithm = Some(check.name().to_string());
    r.graph = Some(GraphInfo::new(g, None));
    r.passed = Some(false);
    if let Some(l) = labelling {
        if r.attach_labelling(g, l.clone()).is_err() {
            r.labelling = Some(l);
        }
    }
    r.error = Some(error);
    r
}

fn from_oracle_error(check: Check, g: &Graph, e: OracleError) -> Eval {
    match e {
        OracleError::Budget(b) => Eval::new(Verdict::Budget, "", b.nodes),
        other => {
            let mut ev = Eval::new(Verdict::Fail, "", 0);
            ev.anomaly = Some(anomaly(check, g, None, other.to_string()));
            ev
        }
    }
}

fn from_construction_error(check: Check, g: &Graph, e: ConstructionError) -> Eval {
    match e {
        ConstructionError::Oracle(OracleError::Budget(b)) => Eval::new(Verdict::Budget, "", b.nodes),
        ConstructionError::Colouring(prodlabel::colouring::ColouringError::Budget(b)) => {
            Eval::new(Verdict::Budget, "", b.nodes)
        }
        other => {
            let mut ev = Eval::new(Verdict::Fail, "", 0);
            ev.anomaly = Some(anomaly(check, g, None, other.to_string()));
            ev
        }
    }
}

fn evaluate(check: Check, g: &Graph, budget: Budget) -> Eval {
    match check {
        Check::P123 => {
            if !g.is_nice() {
                return Eval::new(Verdict::Skipped("not nice"), "", 0);
            }
            match chi_p(g, budget) {
                Ok(r) => {
                    let k = r.value.expect("nice graphs have a value");
                    let mut ev = Eval::new(if k <= 3 { Verdict::Pass } else { Verdict::Fail }, k.to_string(), r.nodes);
                    if k > 3 {
                        let w = r.witness.as_ref().map(|w| LabellingJson::from_edges(g, w));
                        ev.anomaly = Some(anomaly(check, g, w, format!("chi_p = {k}")));
                    }
                    ev
                }
                Err(e) => from_oracle_error(check, g, e),
            }
        }
        Check::WeakForest => match forest_two_labelling(g, budget) {
            Ok(r) => match r.witness() {
                Some(_) => Eval::new(Verdict::Pass, "2", r.nodes),
                None => {
                    let mut ev = Eval::new(Verdict::Fail, "none", r.nodes);
                    ev.anomaly = Some(anomaly(check, g, None, "no 2-labelling with forest classes".into()));
                    ev
                }
            },
            Err(e) => from_oracle_error(check, g, e),
        },
        Check::Mult123ViaAlg => match label_generic(g) {
            Ok(c) => {
                let worst = conflicts(g, &c.labelling).worst;
                let mut value = format!("{worst:?}").to_lowercase();
                if c.repairs > 0 {
                    value.push_str(&format!(" repairs={}", c.repairs));
                }
                let json = LabellingJson::from_edges(g, &c.labelling);
                let mut report = anomaly(check, g, Some(json), String::new());
                if report.verdict(Requirement::S1Matching.name()) == Some(true) {
                    Eval::new(Verdict::Pass, value, 0)
                } else {
                    report.error = Some("output violates the S_1 matching guarantee".into());
                    let mut ev = Eval::new(Verdict::Fail, value, 0);
                    ev.anomaly = Some(report);
                    ev
                }
            }
            Err(e) => from_construction_error(check, g, e),
        },
        Check::Total => match label_total(g) {
            Ok((t, _)) => {
                let mut report = anomaly(check, g, Some(LabellingJson::from_total(g, &t)), String::new());
                if report.verdict(TOTAL) == Some(true) {
                    Eval::new(Verdict::Pass, "total", 0)
                } else {
                    report.error = Some("total labelling is not p-proper".into());
                    let mut ev = Eval::new(Verdict::Fail, "total", 0);
                    ev.anomaly = Some(report);
                    ev
                }
            }
            Err(e) => from_construction_error(check, g, e),
        },
        Check::RegularObs => {
            if !g.is_regular() {
                return Eval::new(Verdict::Skipped("not regular"), "", 0);
            }
            if !g.is_nice() {
                return Eval::new(Verdict::Skipped("not nice"), "", 0);
            }
            match verify_regular_via_multiset(g, budget) {
                Ok(obs) if obs.p_proper => Eval::new(Verdict::Pass, "p-proper", 0),
                Ok(obs) => {
                    let w = LabellingJson::from_edges(g, &obs.witness);
                    let mut ev = Eval::new(Verdict::Fail, "not p-proper", 0);
                    ev.anomaly = Some(anomaly(check, g, Some(w), "m-proper witness is not p-proper".into()));
                    ev
                }
                Err(e) => from_oracle_error(check, g, e),
            }
        }
    }
}

struct Item {
    text: String,
    graph: Result<Graph, String>,
}

fn read_items(max_n: Option<usize>) -> Result<Vec<Item>, CliError> {
    if let Some(n) = max_n {
        if n > MAX_BUILTIN_N {
            return Err(CliError::usage(format!("--max-n is limited to {MAX_BUILTIN_N}")));
        }
        return Ok((1..=n)
            .flat_map(|k| graphs(k, EnumOptions::connected()))
            .map(|g| Item {
                text: String::from_utf8(to_graph6(&g)).expect("graph6 is ascii"),
                graph: Ok(g),
            })
            .collect());
    }
    let mut items = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line.map_err(|e| CliError::usage(format!("reading stdin: {e}")))?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let graph = parse_graph6(text.as_bytes()).map_err(|e| e.to_string());
        items.push(Item {
            text: text.to_string(),
            graph,
        });
    }
    Ok(items)
}

pub fn run(args: SweepArgs) -> Result<u8, CliError> {
    let items = read_items(args.max_n)?;
    let budget = args.budget.budget();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        if j == 0 {
            return Err(CliError::usage("--jobs must be at least 1"));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| CliError::usage(e.to_string()))?;
    let results: Vec<(Eval, f64)> = pool.install(|| {
        items
            .par_iter()
            .map(|item| {
                let start = Instant::now();
                let ev = match &item.graph {
                    Ok(g) => evaluate(args.check, g, budget),
                    Err(_) => Eval::new(Verdict::Malformed, "", 0),
                };
                (ev, start.elapsed().as_secs_f64() * 1e3)
            })
            .collect()
    });

    let sink: Box<dyn io::Write> = match &args.csv {
        Some(path) => Box::new(
            fs::File::create(path).map_err(|e| CliError::usage(format!("creating {}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout()),
    };
    let mut csv = csv::Writer::from_writer(sink);
    let (mut pass, mut fail, mut budget_hits, mut skipped, mut malformed) = (0, 0, 0, 0, 0);
    for (id, (item, (ev, ms))) in items.iter().zip(&results).enumerate() {
        match &ev.verdict {
            Verdict::Pass => pass += 1,
            Verdict::Fail => fail += 1,
            Verdict::Budget => budget_hits += 1,
            Verdict::Skipped(_) => skipped += 1,
            Verdict::Malformed => {
                malformed += 1;
                if let Err(e) = &item.graph {
                    eprintln!("warning: entry {id} ({}) skipped: {e}", item.text);
                }
            }
        }
        let g = item.graph.as_ref().ok();
        csv.serialize(Row {
            id,
            graph6: item.text.clone(),
            n: g.map(Graph::n),
            m: g.map(Graph::m),
            verdict: ev.verdict.text(),
            value: ev.value.clone(),
            nodes: ev.nodes,
            ms: (ms * 1e3).round() / 1e3,
        })
        .map_err(|e| CliError::usage(format!("writing csv: {e}")))?;
        if let Some(report) = &ev.anomaly {
            fs::create_dir_all(&args.anomaly_dir)
                .map_err(|e| CliError::usage(format!("creating {}: {e}", args.anomaly_dir.display())))?;
            report.emit(Some(&args.anomaly_dir.join(format!("{id}.json"))))?;
        }
    }
    csv.flush().map_err(|e| CliError::usage(format!("writing csv: {e}")))?;
    eprintln!(
        "{}: {} graphs, {pass} pass, {fail} fail, {budget_hits} over budget, {skipped} skipped, {malformed} malformed",
        args.check.name(),
        items.len()
    );
    Ok(if fail > 0 {
        EXIT_ANOMALY
    } else if budget_hits > 0 {
        EXIT_BUDGET
    } else if args.strict && malformed > 0 {
        EXIT_USAGE
    } else {
        EXIT_OK
    })
}
