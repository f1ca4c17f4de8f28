use serde::{Deserialize, Serialize};

use super::{EdgeLabelling, Label, LabellingError, TotalLabelling};
use crate::graph::{Graph, Vertex};

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk form: `{"schema": 1, "k": 3, "edges": [[u, v, label], ...],
/// "vertices": [[v, label], ...]}`. The vertex part is optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabellingJson {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub k: Label,
    pub edges: Vec<(Vertex, Vertex, Label)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<(Vertex, Label)>>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

impl LabellingJson {
    pub fn from_edges(g: &Graph, l: &EdgeLabelling) -> Self {
        LabellingJson {
            schema: SCHEMA_VERSION,
            k: l.k(),
            edges: g
                .edges()
                .iter()
                .zip(l.labels())
                .map(|(&(u, v), &lab)| (u, v, lab))
                .collect(),
            vertices: None,
        }
    }

    pub fn from_total(g: &Graph, t: &TotalLabelling) -> Self {
        let mut j = LabellingJson::from_edges(g, &t.edges);
        j.vertices = Some(t.vertices.iter().copied().enumerate().collect());
        j
    }

    pub fn parse(text: &str) -> Result<Self, LabellingError> {
        let j: LabellingJson =
            serde_json::from_str(text).map_err(|e| LabellingError::Json(e.to_string()))?;
        if j.schema != SCHEMA_VERSION {
            return Err(LabellingError::Json(format!("unsupported schema {}", j.schema)));
        }
        Ok(j)
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("labelling serializes")
    }

    /// Resolves against `g`; fails unless every edge is labelled exactly once.
    pub fn edge_labelling(&self, g: &Graph) -> Result<EdgeLabelling, LabellingError> {
        EdgeLabelling::from_triples(g, self.k, self.edges.iter().copied())
    }

    /// Vertex labels, if present, checked to be total on `g`.
    pub fn vertex_labels(&self, g: &Graph) -> Result<Option<Vec<Label>>, LabellingError> {
        let Some(entries) = &self.vertices else {
            return Ok(None);
        };
        let mut out = vec![0; g.n()];
        for &(v, lab) in entries {
            if v >= g.n() || out[v] != 0 || lab == 0 {
                return Err(LabellingError::BadVertexLabel(v));
            }
            out[v] = lab;
        }
        if let Some(v) = out.iter().position(|&l| l == 0) {
            return Err(LabellingError::BadVertexLabel(v));
        }
        Ok(Some(out))
    }
}
