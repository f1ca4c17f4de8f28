use super::four_chromatic::label_four_chromatic_with;
use super::generic::{oracle_p_proper, phase_one};
use super::{ConstructionError, ConstructionTrace, TraceEntry, Work};
use crate::colouring::{normalize_colouring, optimal_colouring, NormalizedColouring, DEFAULT_COLOURING_BUDGET};
use crate::graph::{EdgeId, Graph};
use crate::labelling::{EdgeLabelling, Label, TotalLabelling};

/// p-proper total labelling with edge labels in {1,2,3} and vertex labels
/// in {1,2}, built per component. A lone edge gets vertex labels 1 and 2.
/// Components with chromatic number at most 4 get a p-proper edge labelling
/// and vertex label 1 everywhere. Larger ones run the first phase of the
/// near-proper scheme, after which V1 is 1- or 2-monochromatic, V2 is 1- or
/// 3-monochromatic and everything above is conflict-free; doubling the
/// vertex label on V1 then separates V1 from V2.
pub fn label_total(g: &Graph) -> Result<(TotalLabelling, ConstructionTrace), ConstructionError> {
    let mut labels = vec![1; g.m()];
    let mut vertex = vec![1; g.n()];
    let mut trace = ConstructionTrace::default();
    for comp in g.connected_components() {
        let (h, ids) = g.induced_subgraph(&comp)?;
        let (l, vl, t) = total_component(&h)?;
        let global = |e: EdgeId| {
            let (u, v) = h.edge(e);
            g.edge_id(ids[u], ids[v]).expect("induced edge")
        };
        for e in 0..h.m() {
            labels[global(e)] = l.label(e);
        }
        for (v, &x) in vl.iter().enumerate() {
            vertex[ids[v]] = x;
        }
        for entry in t.entries {
            trace.push(TraceEntry {
                edge: global(entry.edge),
                ..entry
            });
        }
        for m in t.milestones {
            trace.passed(m);
        }
    }
    let edges = EdgeLabelling::new(g, 3, labels).expect("labels in range");
    let total = TotalLabelling::new(g, edges, vertex).expect("vertex labels in range");
    Ok((total, trace))
}

type Part = (EdgeLabelling, Vec<Label>, ConstructionTrace);

fn total_component(h: &Graph) -> Result<Part, ConstructionError> {
    let ones = EdgeLabelling::constant(h, 3, 1);
    match h.m() {
        0 => return Ok((ones, vec![1; h.n()], ConstructionTrace::default())),
        1 => return Ok((ones, vec![1, 2], ConstructionTrace::default())),
        _ => {}
    }
    let parts = optimal_colouring(h, DEFAULT_COLOURING_BUDGET)?;
    let c = normalize_colouring(h, &parts)?;
    let edge_only = |out: super::Construction| Ok((out.labelling, vec![1; h.n()], out.trace));
    match c.k() {
        0..=3 => match oracle_p_proper(h)? {
            Some(out) => edge_only(out),
            None => doubled_v1(h, &c),
        },
        4 => edge_only(label_four_chromatic_with(h, &c)?),
        _ => doubled_v1(h, &c),
    }
}

fn doubled_v1(h: &Graph, c: &NormalizedColouring) -> Result<Part, ConstructionError> {
    let mut w = Work::new(h, 3);
    phase_one(&mut w, c)?;
    let mut vertex = vec![1; h.n()];
    for &v in c.part(0) {
        vertex[v] = 2;
    }
    let (l, trace) = w.finish();
    Ok((l, vertex, trace))
}
