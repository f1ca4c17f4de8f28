use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use prodlabel::colouring::{chromatic_number, ColouringError, DEFAULT_COLOURING_BUDGET};
use prodlabel::constructive::{
    label_bipartite_two, label_complete, label_four_chromatic, label_generic, label_subcubic_two,
    label_total, Construction, ConstructionError,
};
use prodlabel::labelling::LabellingJson;
use prodlabel::oracle::OracleError;
use prodlabel::{Graph, Requirement};

use crate::error::{CliError, EXIT_ANOMALY, EXIT_BUDGET, EXIT_OK, EXIT_USAGE};
use crate::input::{load_graph, Format, Loaded};
use crate::report::{GraphInfo, Report, TraceJson, TOTAL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    Auto,
    FourChromatic,
    Generic,
    Total,
    Complete,
    Bipartite,
    Subcubic,
}

impl Alg {
    fn name(self) -> &'static str {
        match self {
            Alg::Auto => "auto",
            Alg::FourChromatic => "four-chromatic",
            Alg::Generic => "generic",
            Alg::Total => "total",
            Alg::Complete => "complete",
            Alg::Bipartite => "bipartite",
            Alg::Subcubic => "subcubic",
        }
    }

    /// Verdict key the algorithm promises.
    fn requirement(self) -> &'static str {
        match self {
            Alg::FourChromatic => Requirement::AllIndependent.name(),
            Alg::Generic | Alg::Auto => Requirement::S1Matching.name(),
            Alg::Total => TOTAL,
            Alg::Complete => Requirement::OneEdge.name(),
            Alg::Bipartite => Requirement::OneStar.name(),
            Alg::Subcubic => Requirement::AllForests.name(),
        }
    }
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    #[arg(long, value_enum, default_value = "auto")]
    pub alg: Alg,
    /// Input graph file, or - for stdin.
    #[arg(long = "in")]
    pub input: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// BFS root for the bipartite construction.
    #[arg(long)]
    pub root: Option<usize>,
    /// Order of the complete graph when no input is given.
    #[arg(long)]
    pub n: Option<usize>,
}

/// Nice 4-chromatic graphs first (the only p-proper guarantee), then
/// complete, connected bipartite, subcubic, and the generic scheme. A
/// colouring search that runs out of budget just skips the first rule.
fn pick(g: &Graph) -> Alg {
    let four = !g.is_bipartite()
        && g.is_nice()
        && chromatic_number(g, DEFAULT_COLOURING_BUDGET).is_ok_and(|chi| chi == 4);
    if four {
        return Alg::FourChromatic;
    }
    if g.n() >= 2 && g.is_complete() {
        return Alg::Complete;
    }
    if g.is_connected() && g.is_bipartite() {
        return Alg::Bipartite;
    }
    if g.max_degree() <= 3 {
        return Alg::Subcubic;
    }
    Alg::Generic
}

fn exit_code(e: &ConstructionError) -> u8 {
    match e {
        ConstructionError::NotNice
        | ConstructionError::WrongChromaticNumber { .. }
        | ConstructionError::MaxDegree { .. }
        | ConstructionError::TooSmall { .. }
        | ConstructionError::Graph(_) => EXIT_USAGE,
        ConstructionError::Colouring(ColouringError::Budget(_))
        | ConstructionError::Oracle(OracleError::Budget(_)) => EXIT_BUDGET,
        ConstructionError::Oracle(OracleError::Precondition(_)) => EXIT_USAGE,
        _ => EXIT_ANOMALY,
    }
}

fn load(args: &LabelArgs) -> Result<Loaded, CliError> {
    match (&args.input, args.n) {
        (Some(path), None) => load_graph(path, args.format),
        (None, Some(n)) if args.alg == Alg::Complete => Ok(Loaded {
            graph: Graph::complete(n),
            original_ids: None,
        }),
        (None, Some(_)) => Err(CliError::usage("--n is only used with --alg complete")),
        (Some(_), Some(_)) => Err(CliError::usage("give either --in or --n, not both")),
        (None, None) => Err(CliError::usage("no input graph: pass --in PATH (or --n with --alg complete)")),
    }
}

pub fn run(args: LabelArgs) -> Result<u8, CliError> {
    let loaded = load(&args)?;
    let g = &loaded.graph;
    let start = Instant::now();
    let mut report = Report::new("label");
    report.graph = Some(GraphInfo::new(g, loaded.original_ids.clone()));
    let alg = match args.alg {
        Alg::Auto => pick(g),
        a => a,
    };
    report.algorithm = Some(alg.name().to_string());
    report.requirement = Some(alg.requirement().to_string());
    if alg == Alg::Complete && !g.is_complete() {
        report.passed = Some(false);
        report.error = Some("input graph is not complete".into());
        eprintln!("error: input graph is not complete");
        report.emit(args.out.as_deref())?;
        return Ok(EXIT_USAGE);
    }

    let built: Result<(LabellingJson, Option<Construction>, Option<TraceJson>), ConstructionError> = match alg {
        Alg::Total => label_total(g).map(|(t, trace)| (LabellingJson::from_total(g, &t), None, Some(trace.into()))),
        other => {
            let out = match other {
                Alg::FourChromatic => label_four_chromatic(g),
                Alg::Generic => label_generic(g),
                Alg::Complete => label_complete(g.n()),
                Alg::Bipartite => label_bipartite_two(g, args.root),
                Alg::Subcubic => label_subcubic_two(g),
                Alg::Total | Alg::Auto => unreachable!("dispatched above"),
            };
            out.map(|c| {
                let json = LabellingJson::from_edges(g, &c.labelling);
                let trace = TraceJson::from(c.trace.clone());
                (json, Some(c), Some(trace))
            })
        }
    };
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let code = match built {
        Ok((json, construction, trace)) => {
            report.attach_labelling(g, json)?;
            report.trace = trace;
            report.repairs = construction.map(|c| c.repairs);
            let ok = report.verdict(alg.requirement()) == Some(true);
            report.passed = Some(ok);
            if ok {
                EXIT_OK
            } else {
                report.error = Some(format!("output does not satisfy {}", alg.requirement()));
                EXIT_ANOMALY
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if let ConstructionError::Milestone { trace, .. } = &e {
                report.trace = Some(TraceJson::from((**trace).clone()));
            }
            if let ConstructionError::Repair(failure) = &e {
                report.labelling = Some(LabellingJson::from_edges(g, &failure.labelling));
            }
            report.passed = Some(false);
            report.error = Some(e.to_string());
            eprintln!("error: {e}");
            code
        }
    };
    report.emit(args.out.as_deref())?;
    Ok(code)
}
