//! Constructive labelling schemes: the 4-chromatic p-proper scheme, the
//! near-proper scheme for every graph, the total labelling, the three
//! 2-labelling constructions, the parity switch they share, and a bounded
//! repair pass used as a safety net.

mod bipartite;
mod complete;
mod four_chromatic;
mod generic;
mod parity;
mod repair;
mod subcubic;
mod total;
mod trace;

use thiserror::Error;

use crate::colouring::ColouringError;
use crate::graph::{EdgeId, Graph, GraphError, Vertex};
use crate::labelling::{EdgeLabelling, Label};
use crate::oracle::OracleError;

pub use bipartite::label_bipartite_two;
pub use complete::label_complete;
pub use four_chromatic::{label_four_chromatic, label_four_chromatic_with, FOUR_CHROMATIC_MILESTONES};
pub use generic::{label_generic, label_generic_with, GENERIC_MILESTONES};
pub use parity::{parity_switch, ParityTarget};
pub use repair::{repair_conflicts, RepairFailure, DEFAULT_REPAIR_BUDGET};
pub use subcubic::label_subcubic_two;
pub use total::label_total;
pub use trace::{ConstructionTrace, Stage, TraceEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("graph is not nice (it has a K_2 component)")]
    NotNice,
    #[error("graph has chromatic number {found}, expected {expected}")]
    WrongChromaticNumber { expected: usize, found: usize },
    #[error("maximum degree {found} exceeds {limit}")]
    MaxDegree { limit: usize, found: usize },
    #[error("need at least {min} vertices, got {found}")]
    TooSmall { min: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("parity switch: {0}")]
    Parity(String),
    #[error("milestone failed: {claim}")]
    Milestone {
        claim: String,
        trace: Box<ConstructionTrace>,
    },
    #[error(transparent)]
    Repair(#[from] Box<RepairFailure>),
}

/// Output of a construction: the labelling, the replayable trace, and how
/// many times the repair pass had to step in (each one is an anomaly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub labelling: EdgeLabelling,
    pub trace: ConstructionTrace,
    pub repairs: usize,
}

/// Working labelling with per-vertex label counts kept in sync, so that
/// "is `v` 2-monochromatic" style questions are O(1).
pub(crate) struct Work<'g> {
    pub g: &'g Graph,
    pub k: Label,
    pub labels: Vec<Label>,
    // counts[v][label], label 0 unused
    counts: Vec<[u32; 4]>,
    pub trace: ConstructionTrace,
}

impl<'g> Work<'g> {
    pub fn new(g: &'g Graph, k: Label) -> Self {
        assert!((1..=3).contains(&k));
        Work {
            g,
            k,
            labels: vec![1; g.m()],
            counts: (0..g.n()).map(|v| [0, g.degree(v) as u32, 0, 0]).collect(),
            trace: ConstructionTrace::default(),
        }
    }

    pub fn from_labelling(g: &'g Graph, l: &EdgeLabelling) -> Self {
        let mut w = Work::new(g, l.k());
        for (e, &label) in l.labels().iter().enumerate() {
            let (u, v) = g.edge(e);
            for x in [u, v] {
                w.counts[x][1] -= 1;
                w.counts[x][label as usize] += 1;
            }
            w.labels[e] = label;
        }
        w
    }

    pub fn label(&self, e: EdgeId) -> Label {
        self.labels[e]
    }

    pub fn label_between(&self, u: Vertex, v: Vertex) -> Label {
        self.labels[self.edge(u, v)]
    }

    pub fn edge(&self, u: Vertex, v: Vertex) -> EdgeId {
        self.g.edge_id(u, v).expect("edge exists")
    }

    pub fn set(&mut self, e: EdgeId, label: Label, stage: Stage, note: &'static str) {
        debug_assert!(label >= 1 && label <= self.k);
        let old = self.labels[e];
        let (u, v) = self.g.edge(e);
        for w in [u, v] {
            self.counts[w][old as usize] -= 1;
            self.counts[w][label as usize] += 1;
        }
        self.labels[e] = label;
        self.trace.push(TraceEntry {
            edge: e,
            label,
            stage,
            note,
        });
    }

    pub fn set_between(&mut self, u: Vertex, v: Vertex, label: Label, stage: Stage, note: &'static str) {
        let e = self.edge(u, v);
        self.set(e, label, stage, note);
    }

    /// `d_i(v)`.
    pub fn d(&self, v: Vertex, label: Label) -> u32 {
        self.counts[v][label as usize]
    }

    /// 1-monochromatic means product 1; `i`-monochromatic for `i` in {2,3}
    /// means only labels 1 and `i` with at least one `i`.
    pub fn is_mono(&self, v: Vertex, i: Label) -> bool {
        let (d2, d3) = (self.d(v, 2), self.d(v, 3));
        match i {
            1 => d2 == 0 && d3 == 0,
            2 => d2 > 0 && d3 == 0,
            3 => d3 > 0 && d2 == 0,
            _ => false,
        }
    }

    pub fn is_bichromatic(&self, v: Vertex) -> bool {
        self.d(v, 2) > 0 && self.d(v, 3) > 0
    }

    pub fn milestone(&self, ok: bool, claim: impl FnOnce() -> String) -> Result<(), ConstructionError> {
        if ok {
            Ok(())
        } else {
            Err(ConstructionError::Milestone {
                claim: claim(),
                trace: Box::new(self.trace.clone()),
            })
        }
    }

    pub fn snapshot(&self) -> EdgeLabelling {
        EdgeLabelling::new(self.g, self.k, self.labels.clone()).expect("labels in range")
    }

    pub fn finish(self) -> (EdgeLabelling, ConstructionTrace) {
        let l = EdgeLabelling::new(self.g, self.k, self.labels).expect("labels in range");
        (l, self.trace)
    }
}

/// Runs `f` on every connected component and stitches the results back
/// together, translating edge ids in the traces.
pub(crate) fn per_component<F>(g: &Graph, k: Label, mut f: F) -> Result<Construction, ConstructionError>
where
    F: FnMut(&Graph) -> Result<Construction, ConstructionError>,
{
    let components = g.connected_components();
    if components.len() == 1 {
        return f(g);
    }
    let mut labels = vec![1; g.m()];
    let mut trace = ConstructionTrace::default();
    let mut repairs = 0;
    for comp in components {
        let (h, ids) = g.induced_subgraph(&comp)?;
        let c = f(&h)?;
        let global = |e: EdgeId| {
            let (u, v) = h.edge(e);
            g.edge_id(ids[u], ids[v]).expect("induced edge")
        };
        for e in 0..h.m() {
            labels[global(e)] = c.labelling.label(e);
        }
        for entry in c.trace.entries {
            trace.push(TraceEntry {
                edge: global(entry.edge),
                ..entry
            });
        }
        trace.milestones.extend(c.trace.milestones);
        repairs += c.repairs;
    }
    trace.milestones.sort_unstable();
    trace.milestones.dedup();
    Ok(Construction {
        labelling: EdgeLabelling::new(g, k, labels).expect("labels in range"),
        trace,
        repairs,
    })
}
