use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use prodlabel::labelling::{check_shape, signature, sum, LabellingJson};
use prodlabel::{EdgeLabelling, Graph, Requirement, TotalLabelling};

use crate::error::{CliError, EXIT_OK, EXIT_REQUIREMENT};
use crate::input::{load_graph, read_text, Format};
use crate::report::{ClassJson, GraphInfo, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Require {
    PProper,
    MProper,
    SProper,
    S1Matching,
    OneEdge,
    OneStar,
    Forests,
}

impl Require {
    fn name(self) -> &'static str {
        match self {
            Require::PProper => "p-proper",
            Require::MProper => "m-proper",
            Require::SProper => "s-proper",
            Require::S1Matching => "s1-matching",
            Require::OneEdge => "one-edge",
            Require::OneStar => "one-star",
            Require::Forests => "forests",
        }
    }

    fn shape(self) -> Option<Requirement> {
        match self {
            Require::PProper => Some(Requirement::AllIndependent),
            Require::S1Matching => Some(Requirement::S1Matching),
            Require::OneEdge => Some(Requirement::OneEdge),
            Require::OneStar => Some(Requirement::OneStar),
            Require::Forests => Some(Requirement::AllForests),
            Require::MProper | Require::SProper => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Labelling JSON, or a `label` report containing one.
    #[arg(long)]
    pub labelling: String,
    /// With vertex labels present, p-proper means total p-proper.
    #[arg(long, value_enum)]
    pub require: Require,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_labelling(path: &str) -> Result<LabellingJson, CliError> {
    let text = read_text(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::precondition(format!("{path}: {e}")))?;
    let inner = match value.get("labelling") {
        Some(l) => l.to_string(),
        None => text,
    };
    LabellingJson::parse(&inner).map_err(|e| CliError::precondition(format!("{path}: {e}")))
}

/// Edges whose ends agree on `key`.
fn equal_ends<K: PartialEq>(g: &Graph, key: impl Fn(usize) -> K) -> Vec<(usize, usize)> {
    let keys: Vec<K> = (0..g.n()).map(key).collect();
    g.edges().iter().copied().filter(|&(u, v)| keys[u] == keys[v]).collect()
}

pub fn run(args: VerifyArgs) -> Result<u8, CliError> {
    let loaded = load_graph(&args.graph, args.format)?;
    let g = &loaded.graph;
    let json = read_labelling(&args.labelling)?;
    let l: EdgeLabelling = json.edge_labelling(g).map_err(|e| CliError::precondition(e.to_string()))?;
    let vertices = json.vertex_labels(g).map_err(|e| CliError::precondition(e.to_string()))?;
    let start = Instant::now();

    let mut report = Report::new("verify");
    report.graph = Some(GraphInfo::new(g, loaded.original_ids.clone()));
    report.requirement = Some(args.require.name().to_string());
    let (holds, conflicts) = match (args.require, vertices) {
        (Require::PProper, Some(v)) => {
            let t = TotalLabelling::new(g, l.clone(), v).map_err(|e| CliError::precondition(e.to_string()))?;
            let c = t.conflicts(g);
            (c.is_empty(), c)
        }
        (Require::MProper, _) => {
            let c = equal_ends(g, |v| signature(g, &l, v));
            (c.is_empty(), c)
        }
        (Require::SProper, _) => {
            let c = equal_ends(g, |v| sum(g, &l, v));
            (c.is_empty(), c)
        }
        (r, _) => {
            let shape = check_shape(g, &l, r.shape().expect("shape requirement"));
            report.violating_classes = shape.violating.iter().map(|&i| ClassJson::from(&shape.classes[i])).collect();
            let c = shape
                .violating
                .iter()
                .flat_map(|&i| shape.classes[i].edges.iter().copied())
                .collect();
            (shape.conforms(), c)
        }
    };
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report.passed = Some(holds);
    report.verdicts.insert(args.require.name().to_string(), holds);
    report.conflicts = Some(conflicts);
    report.labelling = Some(json);
    report.emit(args.out.as_deref())?;
    Ok(if holds { EXIT_OK } else { EXIT_REQUIREMENT })
}
