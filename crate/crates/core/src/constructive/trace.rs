use serde::Serialize;

use crate::graph::{EdgeId, Graph};
use crate::labelling::{EdgeLabelling, Label};

/// Which part of a construction made an assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    /// Upward edges of the high parts (both colouring-based schemes).
    Step1,
    /// Case 1 to 3 of the 4-chromatic scheme.
    Case1,
    Case2,
    Case3,
    /// Repeated two-pendant relabelling and the final degree-1 fix.
    Pendants,
    FinalFix,
    /// The two while-loops of the near-proper scheme.
    LoopV2,
    LoopV1,
    /// Parity switch on a component with labels 1 and 3.
    Components,
    Oracle,
    Complete,
    Bipartite,
    Subcubic,
    Repair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub edge: EdgeId,
    pub label: Label,
    pub stage: Stage,
    pub note: &'static str,
}

/// Ordered assignments made by a construction, starting from the all-1
/// labelling, plus the names of the milestone checks that passed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub entries: Vec<TraceEntry>,
    pub milestones: Vec<&'static str>,
}

impl ConstructionTrace {
    pub fn push(&mut self, entry: TraceEntry) {
        self.entries.push(entry);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn passed(&mut self, milestone: &'static str) {
        if !self.milestones.contains(&milestone) {
            self.milestones.push(milestone);
        }
    }

    /// Applies the entries in order to the all-1 labelling of `g`.
    pub fn replay(&self, g: &Graph, k: Label) -> EdgeLabelling {
        let mut labels = vec![1; g.m()];
        for entry in &self.entries {
            labels[entry.edge] = entry.label;
        }
        EdgeLabelling::new(g, k, labels).expect("trace labels in range")
    }
}
