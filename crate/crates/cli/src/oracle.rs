use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, ValueEnum};
use prodlabel::labelling::LabellingJson;
use prodlabel::oracle::{
    chi_m, chi_p, chi_s, forest_two_labelling, verify_regular_via_multiset, ChiResult, OracleError,
    Outcome, SearchResult, DEFAULT_ORACLE_BUDGET,
};
use prodlabel::{Budget, Graph};
use serde_json::{json, Value};

use crate::error::{CliError, EXIT_ANOMALY, EXIT_BUDGET, EXIT_OK, EXIT_REQUIREMENT, EXIT_USAGE};
use crate::input::{load_graph, Format};
use crate::report::{GraphInfo, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Param {
    ChiP,
    ChiM,
    ChiS,
    Forest2,
    RegularObs,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::ChiP => "chi-p",
            Param::ChiM => "chi-m",
            Param::ChiS => "chi-s",
            Param::Forest2 => "forest2",
            Param::RegularObs => "regular-obs",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Search-node limit (defaults apply when neither limit is given).
    #[arg(long)]
    pub max_nodes: Option<u64>,
    #[arg(long)]
    pub max_seconds: Option<f64>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        if self.max_nodes.is_none() && self.max_seconds.is_none() {
            return DEFAULT_ORACLE_BUDGET;
        }
        Budget {
            max_nodes: self.max_nodes,
            max_time: self.max_seconds.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub param: Param,
    #[arg(long = "in")]
    pub input: String,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn search_json(r: &SearchResult) -> Value {
    let outcome = match r.outcome {
        Outcome::Witness(_) => "witness",
        Outcome::ExhaustedNone => "exhausted",
        Outcome::UndefinedNotNice => "undefined (not nice)",
    };
    json!({ "k": r.k, "outcome": outcome, "nodes": r.nodes, "elapsed_ms": ms(r.elapsed) })
}

fn chi_json(g: &Graph, param: Param, r: &ChiResult) -> Value {
    json!({
        "param": param.name(),
        "value": match r.value {
            Some(k) => json!(k),
            None => json!("undefined (not nice)"),
        },
        "witness": r.witness.as_ref().map(|w| LabellingJson::from_edges(g, w)),
        "lower_certificate": r.lower_certificate.as_ref().map(search_json),
        "nodes": r.nodes,
    })
}

/// Outcome of one oracle query: JSON payload plus exit code.
pub fn evaluate(g: &Graph, param: Param, budget: Budget) -> Result<(Value, u8), OracleError> {
    Ok(match param {
        Param::ChiP | Param::ChiM | Param::ChiS => {
            let chi = match param {
                Param::ChiP => chi_p,
                Param::ChiM => chi_m,
                _ => chi_s,
            };
            (chi_json(g, param, &chi(g, budget)?), EXIT_OK)
        }
        Param::Forest2 => {
            let r = forest_two_labelling(g, budget)?;
            let mut v = search_json(&r);
            v["param"] = json!(param.name());
            v["witness"] = json!(r.witness().map(|w| LabellingJson::from_edges(g, w)));
            (v, if r.witness().is_some() { EXIT_OK } else { EXIT_REQUIREMENT })
        }
        Param::RegularObs => {
            let obs = verify_regular_via_multiset(g, budget)?;
            let v = json!({
                "param": param.name(),
                "p_proper": obs.p_proper,
                "witness": LabellingJson::from_edges(g, &obs.witness),
            });
            (v, if obs.p_proper { EXIT_OK } else { EXIT_ANOMALY })
        }
    })
}

pub fn error_code(e: &OracleError) -> u8 {
    match e {
        OracleError::Budget(_) => EXIT_BUDGET,
        OracleError::Precondition(_) => EXIT_USAGE,
        OracleError::Anomaly(_) => EXIT_ANOMALY,
    }
}

pub fn run(args: OracleArgs) -> Result<u8, CliError> {
    let loaded = load_graph(&args.input, args.format)?;
    let g = &loaded.graph;
    let mut report = Report::new("oracle");
    report.graph = Some(GraphInfo::new(g, loaded.original_ids.clone()));
    report.algorithm = Some(args.param.name().to_string());
    let start = Instant::now();
    let result = evaluate(g, args.param, args.budget.budget());
    report.elapsed_ms = ms(start.elapsed());
    let code = match result {
        Ok((value, code)) => {
            report.result = Some(value);
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            report.error = Some(e.to_string());
            error_code(&e)
        }
    };
    report.emit(args.out.as_deref())?;
    Ok(code)
}
