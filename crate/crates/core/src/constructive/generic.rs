use std::collections::BTreeSet;

use super::four_chromatic::label_four_chromatic_with;
use super::parity::{switch, ParityTarget};
use super::repair::{repair_in_place, DEFAULT_REPAIR_BUDGET};
use super::{per_component, Construction, ConstructionError, ConstructionTrace, Stage, TraceEntry, Work};
use crate::budget::Budget;
use crate::colouring::{normalize_colouring, optimal_colouring, NormalizedColouring, DEFAULT_COLOURING_BUDGET};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::labelling::{check_shape, EdgeLabelling, Requirement};
use crate::oracle::{find_k_labelling, OracleError, Outcome, Predicate};

const PART_CLAIM: &str = "every vertex of V3..Vk meets its part's target";
const LOW_PARTS_CLAIM: &str = "V1 is 1- or 2-monochromatic and V2 is 1- or 3-monochromatic";
const SPECIAL_CLAIM: &str = "no vertex of V3..Vk is special";
const STAR_CLAIM: &str = "large components of B are stars centred in V1 with a 3-monochromatic V2 neighbour";
const SWITCH_CLAIM: &str = "component relabelling meets every non-free parity target";
const S1_CLAIM: &str = "S_1 induces a matching and every other class is independent";

/// Every check the near-proper scheme makes, in order.
pub const GENERIC_MILESTONES: [&str; 6] = [
    PART_CLAIM,
    LOW_PARTS_CLAIM,
    SPECIAL_CLAIM,
    STAR_CLAIM,
    SWITCH_CLAIM,
    S1_CLAIM,
];

/// Node budget for the exhaustive p-proper search used on 3-colourable
/// components. Nodes rather than time keep the result deterministic.
const ORACLE_NODES: u64 = 2_000_000;

/// 3-labelling in which `S_1` induces a matching and all other classes are
/// independent. Components are handled separately: lone edges get label 1,
/// 3-colourable components a p-proper labelling from exhaustive search
/// (falling back to the colouring scheme if the search budget runs out),
/// 4-chromatic ones the 4-chromatic scheme, and the rest the colouring
/// scheme for `k >= 5`.
pub fn label_generic(g: &Graph) -> Result<Construction, ConstructionError> {
    per_component(g, 3, generic_component)
}

fn generic_component(h: &Graph) -> Result<Construction, ConstructionError> {
    if h.m() <= 1 {
        // K_1 or K_2: the all-1 labelling
        return Ok(Construction {
            labelling: EdgeLabelling::constant(h, 3, 1),
            trace: ConstructionTrace::default(),
            repairs: 0,
        });
    }
    let parts = optimal_colouring(h, DEFAULT_COLOURING_BUDGET)?;
    let c = normalize_colouring(h, &parts)?;
    match c.k() {
        0..=3 => match oracle_p_proper(h)? {
            Some(done) => Ok(done),
            None => label_generic_with(h, &c),
        },
        4 => label_four_chromatic_with(h, &c),
        _ => label_generic_with(h, &c),
    }
}

pub(crate) fn oracle_p_proper(h: &Graph) -> Result<Option<Construction>, ConstructionError> {
    let r = match find_k_labelling(h, 3, Predicate::PProper, Budget::nodes(ORACLE_NODES)) {
        Ok(r) => r,
        Err(OracleError::Budget(_)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    match r.outcome {
        Outcome::Witness(labelling) => {
            let mut trace = ConstructionTrace::default();
            for (edge, &label) in labelling.labels().iter().enumerate() {
                if label != 1 {
                    trace.push(TraceEntry {
                        edge,
                        label,
                        stage: Stage::Oracle,
                        note: "exhaustive search",
                    });
                }
            }
            Ok(Some(Construction {
                labelling,
                trace,
                repairs: 0,
            }))
        }
        other => Err(OracleError::Anomaly(format!(
            "3-colourable nice graph without a p-proper 3-labelling ({other:?})"
        ))
        .into()),
    }
}

/// The colouring scheme on a caller-supplied normalized colouring, for any
/// number of parts. Falls back to the repair pass if the final shape check
/// fails; `repairs` counts such activations.
pub fn label_generic_with(g: &Graph, c: &NormalizedColouring) -> Result<Construction, ConstructionError> {
    c.check(g)?;
    let mut w = Work::new(g, 3);
    phase_one(&mut w, c)?;
    phase_two(&mut w, c)?;
    let mut repairs = 0;
    if check_shape(g, &w.snapshot(), Requirement::S1Matching).conforms() {
        w.trace.passed(S1_CLAIM);
    } else {
        repair_in_place(&mut w, Requirement::S1Matching, DEFAULT_REPAIR_BUDGET)?;
        repairs += 1;
    }
    let (labelling, trace) = w.finish();
    Ok(Construction {
        labelling,
        trace,
        repairs,
    })
}

fn first_in(w: &Work, c: &NormalizedColouring, v: Vertex, part: usize) -> Vertex {
    c.first_neighbour_in(w.g, v, part).expect("normalized colouring has a witness")
}

/// Parts `V_k` down to `V_3` get their targets (parts are 1-based in the
/// comments, 0-based in code):
/// `V_{2n+1}`: 2-degree `n`, even {2,3}-degree; `V_{2n}`: 3-degree `n`, odd
/// {2,3}-degree; all bichromatic. Odd parts only ever receive 3 or 1 on
/// downward edges and even parts 2 or 1.
pub(crate) fn phase_one(w: &mut Work, c: &NormalizedColouring) -> Result<(), ConstructionError> {
    let k = c.k();
    for p in (3..=k).rev() {
        let n = p / 2;
        for &v in c.part(p - 1) {
            if p % 2 == 0 {
                even_part(w, c, v, n);
            } else {
                odd_part(w, c, v, n);
            }
        }
    }
    for p in 3..=k {
        let n = (p / 2) as u32;
        for &v in c.part(p - 1) {
            let (d2, d3) = (w.d(v, 2), w.d(v, 3));
            let ok = if p % 2 == 0 {
                d3 == n && (d2 + d3) % 2 == 1
            } else {
                d2 == n && (d2 + d3) % 2 == 0
            };
            w.milestone(ok && d2 > 0 && d3 > 0, || {
                format!("{PART_CLAIM} (vertex {v} in V{p}: d2={d2}, d3={d3})")
            })?;
            w.milestone(!(d3 == 1 && (d2 + d3) % 2 == 1 && d2 + d3 >= 3), || {
                format!("{SPECIAL_CLAIM} (vertex {v})")
            })?;
        }
    }
    w.trace.passed(PART_CLAIM);
    w.trace.passed(SPECIAL_CLAIM);
    for (p, want) in [(0, 2), (1, 3)] {
        for &v in c.parts().get(p).map(Vec::as_slice).unwrap_or(&[]) {
            let ok = w.is_mono(v, 1) || w.is_mono(v, want);
            w.milestone(ok, || format!("{LOW_PARTS_CLAIM} (vertex {v})"))?;
        }
    }
    w.trace.passed(LOW_PARTS_CLAIM);
    Ok(())
}

fn even_part(w: &mut Work, c: &NormalizedColouring, v: Vertex, n: usize) {
    // 3 towards V_2, V_3, V_5, ..., V_{2n-1}
    for q in std::iter::once(2).chain((1..n).map(|i| 2 * i + 1)) {
        let u = first_in(w, c, v, q - 1);
        w.set_between(v, u, 3, Stage::Step1, "even part: 3-degree n");
    }
    let s = w.d(v, 2);
    let odd = (n as u32 + s) % 2 == 1;
    if !odd {
        let u = first_in(w, c, v, 0);
        w.set_between(v, u, 2, Stage::Step1, "even part: parity via V1");
    } else if s == 0 {
        // odd total but no 2 yet: two more 2s keep the parity (n >= 3 here)
        for q in [1, 4] {
            let u = first_in(w, c, v, q - 1);
            w.set_between(v, u, 2, Stage::Step1, "even part: bichromatic via V1 and V4");
        }
    }
}

fn odd_part(w: &mut Work, c: &NormalizedColouring, v: Vertex, n: usize) {
    // 2 towards V_1, V_4, V_6, ..., V_{2n}
    for q in std::iter::once(1).chain((2..=n).map(|i| 2 * i)) {
        let u = first_in(w, c, v, q - 1);
        w.set_between(v, u, 2, Stage::Step1, "odd part: 2-degree n");
    }
    let s = w.d(v, 3);
    if (n as u32 + s) % 2 == 1 {
        let u = first_in(w, c, v, 1);
        w.set_between(v, u, 3, Stage::Step1, "odd part: parity via V2");
    } else if s == 0 {
        // n even and no 3 yet: needs two more 3s without touching the 2s
        let v2: Vec<Vertex> = w.g.neighbors(v).filter(|&u| c.part_of(u) == 1).take(2).collect();
        let pair = if v2.len() == 2 {
            [v2[0], v2[1]]
        } else {
            [v2[0], first_in(w, c, v, 2)]
        };
        for u in pair {
            w.set_between(v, u, 3, Stage::Step1, "odd part: bichromatic via two 3s");
        }
    }
}

/// Deals with the edges between V1 and V2 once phase one is done.
fn phase_two(w: &mut Work, c: &NormalizedColouring) -> Result<(), ConstructionError> {
    let g = w.g;
    let part = |v: Vertex| c.part_of(v);
    // vertices of the components of H with at least three vertices
    let in_big_h = big_h_vertices(w, c);

    let mono_nbrs = |w: &Work, v: Vertex, p: usize| -> Vec<Vertex> {
        g.neighbors(v).filter(|&x| part(x) == p && w.is_mono(x, 1)).collect()
    };

    // a 1-monochromatic V2 vertex with two 1-monochromatic V1 neighbours
    loop {
        let pick = (0..g.n())
            .filter(|&v| part(v) == 1 && w.is_mono(v, 1))
            .find_map(|v| match mono_nbrs(w, v, 0).as_slice() {
                [u1, u2, ..] => Some((v, *u1, *u2)),
                _ => None,
            });
        let Some((v, u1, u2)) = pick else { break };
        let special = g.neighbors(v).find(|&x| part(x) == 0 && w.is_mono(x, 2) && w.d(x, 2) == 2);
        if let Some(x) = special {
            w.set_between(x, v, 3, Stage::LoopV2, "neighbour with 2-degree 2 turns special");
        } else {
            w.set_between(v, u1, 2, Stage::LoopV2, "2-monochromatic with 2-degree 2");
            w.set_between(v, u2, 2, Stage::LoopV2, "2-monochromatic with 2-degree 2");
        }
    }

    // a 1-monochromatic V1 vertex with two 1-monochromatic V2 neighbours and
    // no 3-monochromatic V2 neighbour
    loop {
        let pick = (0..g.n())
            .filter(|&u| part(u) == 0 && w.is_mono(u, 1))
            .filter(|&u| !g.neighbors(u).any(|x| part(x) == 1 && w.is_mono(x, 3)))
            .find_map(|u| match mono_nbrs(w, u, 1).as_slice() {
                [v1, v2, ..] => Some((u, *v1, *v2)),
                _ => None,
            });
        let Some((u, v1, v2)) = pick else { break };
        w.set_between(u, v1, 3, Stage::LoopV1, "3-monochromatic with 3-degree 2");
        w.set_between(u, v2, 3, Stage::LoopV1, "3-monochromatic with 3-degree 2");
    }

    // B: remaining 1-monochromatic vertices of H. Its components on three or
    // more vertices must be stars centred in V1.
    let in_b = |w: &Work, v: Vertex| in_big_h[v] && part(v) <= 1 && w.is_mono(v, 1);
    let mut centres = BTreeSet::new();
    for u in (0..g.n()).filter(|&u| in_b(w, u)) {
        let b_nbrs: Vec<Vertex> = g.neighbors(u).filter(|&x| in_b(w, x)).collect();
        if b_nbrs.len() >= 2 {
            let leaves_ok = b_nbrs
                .iter()
                .all(|&x| g.neighbors(x).filter(|&y| in_b(w, y)).count() == 1);
            let ok = part(u) == 0
                && leaves_ok
                && g.neighbors(u).any(|x| part(x) == 1 && w.is_mono(x, 3));
            w.milestone(ok, || format!("{STAR_CLAIM} (vertex {u})"))?;
            centres.insert(u);
        }
    }
    w.trace.passed(STAR_CLAIM);
    if centres.is_empty() {
        return Ok(());
    }

    // C: B plus the edges from B to 3-monochromatic V2 vertices. Components
    // are collected up front; the relabelling only touches their own edges.
    let in_c_edge = |w: &Work, e: EdgeId| {
        let (a, b) = g.edge(e);
        (in_b(w, a) && in_b(w, b)) || (in_b(w, a) && w.is_mono(b, 3) && part(b) == 1)
            || (in_b(w, b) && w.is_mono(a, 3) && part(a) == 1)
    };
    let mut seen = vec![false; g.n()];
    let mut comps: Vec<(BTreeSet<Vertex>, Vec<EdgeId>)> = Vec::new();
    for &s in &centres {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut verts = BTreeSet::from([s]);
        let mut edges = Vec::new();
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(y, e) in g.incident(x) {
                if in_c_edge(w, e) {
                    edges.push(e);
                    if !seen[y] {
                        seen[y] = true;
                        verts.insert(y);
                        stack.push(y);
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        comps.push((verts, edges));
    }
    for (verts, edges) in comps {
        // free vertex: the smallest leaf of a star in this component
        let free = verts
            .iter()
            .copied()
            .filter(|&x| part(x) == 1 && in_b(w, x))
            .find(|&x| g.neighbors(x).any(|y| centres.contains(&y)))
            .expect("a star has leaves");
        let targets: Vec<(Vertex, bool)> = verts
            .iter()
            .copied()
            .filter(|&x| x != free)
            .map(|x| (x, part(x) == 1))
            .collect();
        switch(w, &ParityTarget {
            edges,
            toggle: (1, 3),
            targets: targets.clone(),
            free,
        }, Stage::Components)?;
        for (x, odd) in targets {
            w.milestone((w.d(x, 3) % 2 == 1) == odd, || format!("{SWITCH_CLAIM} (vertex {x})"))?;
        }
    }
    w.trace.passed(SWITCH_CLAIM);
    Ok(())
}

/// Marks the vertices of components of H (edges from 1-monochromatic V2
/// vertices to V1) that have at least three vertices.
fn big_h_vertices(w: &Work, c: &NormalizedColouring) -> Vec<bool> {
    let g = w.g;
    let in_h = |e: EdgeId| {
        let (a, b) = g.edge(e);
        let (x, y) = if c.part_of(a) == 0 { (a, b) } else { (b, a) };
        c.part_of(x) == 0 && c.part_of(y) == 1 && w.is_mono(y, 1)
    };
    let mut mark = vec![false; g.n()];
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(y, e) in g.incident(x) {
                if !seen[y] && in_h(e) {
                    seen[y] = true;
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        if comp.len() >= 3 {
            for v in comp {
                mark[v] = true;
            }
        }
    }
    mark
}
