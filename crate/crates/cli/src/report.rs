use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use prodlabel::constructive::{ConstructionTrace, TraceEntry};
use prodlabel::graph::to_graph6;
use prodlabel::labelling::{
    check_shape, conflicts, is_m_proper, is_s_proper, ClassShape, LabellingJson, SCHEMA_VERSION,
};
use prodlabel::{Graph, Requirement, TotalLabelling};
use serde::Serialize;

use crate::error::CliError;

/// Verdict key for p-proper total labellings.
pub const TOTAL: &str = "total-p-proper";

#[derive(Debug, Clone, Serialize)]
pub struct GraphInfo {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub original_ids: Option<Vec<usize>>,
}

impl GraphInfo {
    pub fn new(g: &Graph, original_ids: Option<Vec<usize>>) -> Self {
        GraphInfo {
            graph6: String::from_utf8(to_graph6(g)).expect("graph6 is ascii"),
            n: g.n(),
            m: g.m(),
            original_ids,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    pub product: String,
    pub shape: String,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl From<&ClassShape> for ClassJson {
    fn from(c: &ClassShape) -> Self {
        ClassJson {
            product: c.product.value().to_string(),
            shape: format!("{:?}", c.shape).to_lowercase(),
            vertices: c.vertices.clone(),
            edges: c.edges.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceJson {
    pub steps: usize,
    pub milestones: Vec<&'static str>,
    pub entries: Vec<TraceEntry>,
}

impl From<ConstructionTrace> for TraceJson {
    fn from(t: ConstructionTrace) -> Self {
        TraceJson {
            steps: t.len(),
            milestones: t.milestones,
            entries: t.entries,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requirement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labelling: Option<LabellingJson>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub verdicts: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflicts: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violating_classes: Vec<ClassJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repairs: Option<usize>,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            graph: None,
            algorithm: None,
            requirement: None,
            passed: None,
            labelling: None,
            verdicts: BTreeMap::new(),
            conflicts: None,
            violating_classes: Vec::new(),
            repairs: None,
            elapsed_ms: 0.0,
            trace: None,
            result: None,
            error: None,
        }
    }

    /// Stores the labelling and derives every verdict from its serialized
    /// form, so the report can never disagree with the labelling it ships.
    pub fn attach_labelling(&mut self, g: &Graph, json: LabellingJson) -> Result<(), CliError> {
        let text = serde_json::to_string(&json).expect("labelling serializes");
        let back = LabellingJson::parse(&text).map_err(|e| CliError::anomaly(e.to_string()))?;
        let l = back.edge_labelling(g).map_err(|e| CliError::anomaly(e.to_string()))?;
        for r in Requirement::ALL {
            self.verdicts.insert(r.name().to_string(), check_shape(g, &l, r).conforms());
        }
        self.verdicts.insert("m-proper".into(), is_m_proper(g, &l));
        self.verdicts.insert("s-proper".into(), is_s_proper(g, &l));
        match back.vertex_labels(g).map_err(|e| CliError::anomaly(e.to_string()))? {
            Some(vertices) => {
                let t = TotalLabelling::new(g, l, vertices).map_err(|e| CliError::anomaly(e.to_string()))?;
                self.verdicts.insert(TOTAL.into(), t.is_total_p_proper(g));
                self.conflicts = Some(t.conflicts(g));
            }
            None => self.conflicts = Some(conflicts(g, &l).conflicts),
        }
        self.labelling = Some(back);
        Ok(())
    }

    pub fn verdict(&self, name: &str) -> Option<bool> {
        self.verdicts.get(name).copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes to `out` if given, else to stdout.
    pub fn emit(&self, out: Option<&Path>) -> Result<(), CliError> {
        let text = self.to_json();
        match out {
            Some(path) => fs::write(path, text + "\n")
                .map_err(|e| CliError::usage(format!("writing {}: {e}", path.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                match writeln!(out, "{text}") {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                        Err(CliError::usage(format!("writing stdout: {e}")))
                    }
                    _ => Ok(()),
                }
            }
        }
    }
}
