use std::collections::BTreeSet;

use super::parity::{switch, ParityTarget};
use super::{Construction, ConstructionError, Stage, Work};
use crate::colouring::{normalize_colouring, optimal_colouring, NormalizedColouring, DEFAULT_COLOURING_BUDGET};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::labelling::is_p_proper;

const V4_CLAIM: &str = "every V4 vertex is bichromatic with even 3-degree";
const V3_CLAIM: &str = "every V3 vertex is bichromatic with odd 3-degree";
const V2_CLAIM: &str = "V2 downward edges are labelled 1 or 3, upward edges 1";
const V1_CLAIM: &str = "V1 downward edges to V3 and V4 are labelled 2, to V2 labelled 1";
const SEPARATION_CLAIM: &str = "distinct components of H are non-adjacent";
const REMAINING_CLAIM: &str =
    "in a remaining component, 1-monochromatic V1 vertices have degree 1 and no 1-monochromatic vertex has a bichromatic neighbour";
const FINAL_FIX_CLAIM: &str = "a residual V2 vertex has a 2-monochromatic V1 neighbour";
const P_PROPER_CLAIM: &str = "the result is p-proper";

/// Every check the 4-chromatic scheme makes along the way, in order.
pub const FOUR_CHROMATIC_MILESTONES: [&str; 8] = [
    V4_CLAIM,
    V3_CLAIM,
    V2_CLAIM,
    V1_CLAIM,
    SEPARATION_CLAIM,
    REMAINING_CLAIM,
    FINAL_FIX_CLAIM,
    P_PROPER_CLAIM,
];

/// p-proper 3-labelling of a nice 4-chromatic graph.
pub fn label_four_chromatic(g: &Graph) -> Result<Construction, ConstructionError> {
    if !g.is_nice() {
        return Err(ConstructionError::NotNice);
    }
    let parts = optimal_colouring(g, DEFAULT_COLOURING_BUDGET)?;
    if parts.len() != 4 {
        return Err(ConstructionError::WrongChromaticNumber {
            expected: 4,
            found: parts.len(),
        });
    }
    let c = normalize_colouring(g, &parts)?;
    label_four_chromatic_with(g, &c)
}

/// Same scheme on a caller-supplied normalized 4-colouring.
pub fn label_four_chromatic_with(
    g: &Graph,
    c: &NormalizedColouring,
) -> Result<Construction, ConstructionError> {
    if !g.is_nice() {
        return Err(ConstructionError::NotNice);
    }
    if c.k() != 4 {
        return Err(ConstructionError::WrongChromaticNumber {
            expected: 4,
            found: c.k(),
        });
    }
    c.check(g)?;
    let mut w = Work::new(g, 3);
    step_one(&mut w, c)?;
    step_two(&mut w, c)?;
    let l = w.snapshot();
    w.milestone(is_p_proper(g, &l), || P_PROPER_CLAIM.into())?;
    w.trace.passed(P_PROPER_CLAIM);
    let (labelling, trace) = w.finish();
    Ok(Construction {
        labelling,
        trace,
        repairs: 0,
    })
}

fn first_in(w: &Work, c: &NormalizedColouring, v: Vertex, part: usize) -> Vertex {
    c.first_neighbour_in(w.g, v, part).expect("normalized colouring has a witness")
}

fn check_v4(w: &Work, c: &NormalizedColouring) -> Result<(), ConstructionError> {
    for &v in c.part(3) {
        w.milestone(w.is_bichromatic(v) && w.d(v, 3).is_multiple_of(2), || format!("{V4_CLAIM} (vertex {v})"))?;
    }
    Ok(())
}

fn step_one(w: &mut Work, c: &NormalizedColouring) -> Result<(), ConstructionError> {
    let g = w.g;
    for &v in c.part(3) {
        for &(u, e) in g.incident(v) {
            match c.part_of(u) {
                0 => w.set(e, 2, Stage::Step1, "V4 to V1"),
                2 => w.set(e, 3, Stage::Step1, "V4 to V3"),
                _ => {}
            }
        }
        if w.d(v, 3) % 2 == 1 {
            let u = first_in(w, c, v, 1);
            w.set_between(v, u, 3, Stage::Step1, "V4 parity via V2");
        }
    }
    check_v4(w, c)?;
    for &v in c.part(2) {
        for &(u, e) in g.incident(v) {
            if c.part_of(u) == 0 {
                w.set(e, 2, Stage::Step1, "V3 to V1");
            }
        }
        if w.d(v, 3).is_multiple_of(2) {
            let u = first_in(w, c, v, 1);
            w.set_between(v, u, 3, Stage::Step1, "V3 parity via V2");
        }
    }
    check_v4(w, c)?;
    w.trace.passed(V4_CLAIM);
    for &v in c.part(2) {
        w.milestone(w.is_bichromatic(v) && w.d(v, 3) % 2 == 1, || format!("{V3_CLAIM} (vertex {v})"))?;
    }
    w.trace.passed(V3_CLAIM);
    for &v in c.part(1) {
        for &(u, e) in g.incident(v) {
            let label = w.label(e);
            let ok = match c.part_of(u) {
                0 => label == 1,
                _ => label == 1 || label == 3,
            };
            w.milestone(ok, || format!("{V2_CLAIM} (edge {v}-{u})"))?;
        }
    }
    w.trace.passed(V2_CLAIM);
    for &v in c.part(0) {
        for &(u, e) in g.incident(v) {
            let want = if c.part_of(u) == 1 { 1 } else { 2 };
            w.milestone(w.label(e) == want, || format!("{V1_CLAIM} (edge {v}-{u})"))?;
        }
    }
    w.trace.passed(V1_CLAIM);
    Ok(())
}

/// A component of the graph formed by the edges between 1-monochromatic V2
/// vertices and V1.
struct Component {
    vertices: BTreeSet<Vertex>,
    edges: Vec<EdgeId>,
}

fn components_of_h(w: &Work, c: &NormalizedColouring) -> Vec<Component> {
    let g = w.g;
    let in_h = |e: EdgeId| {
        let (a, b) = g.edge(e);
        let (v1, v2) = if c.part_of(a) == 0 { (a, b) } else { (b, a) };
        c.part_of(v1) == 0 && c.part_of(v2) == 1 && w.is_mono(v2, 1)
    };
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] || !g.incident(s).iter().any(|&(_, e)| in_h(e)) {
            continue;
        }
        let mut comp = Component {
            vertices: BTreeSet::from([s]),
            edges: Vec::new(),
        };
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(y, e) in g.incident(x) {
                if in_h(e) {
                    if x < y {
                        comp.edges.push(e);
                    }
                    if !seen[y] {
                        seen[y] = true;
                        comp.vertices.insert(y);
                        stack.push(y);
                    }
                }
            }
        }
        comp.edges.sort_unstable();
        out.push(comp);
    }
    out
}

fn step_two(w: &mut Work, c: &NormalizedColouring) -> Result<(), ConstructionError> {
    let g = w.g;
    let comps = components_of_h(w, c);
    let mut owner = vec![usize::MAX; g.n()];
    for (i, h) in comps.iter().enumerate() {
        for &v in &h.vertices {
            owner[v] = i;
        }
    }
    for (u, v) in g.edges().iter().copied() {
        let split = owner[u] != usize::MAX && owner[v] != usize::MAX && owner[u] != owner[v];
        w.milestone(!split, || format!("{SEPARATION_CLAIM} (edge {u}-{v})"))?;
    }
    w.trace.passed(SEPARATION_CLAIM);

    for h in &comps {
        let conflicting = h.edges.iter().any(|&e| {
            let (a, b) = g.edge(e);
            w.is_mono(a, 1) && w.is_mono(b, 1)
        });
        if !conflicting {
            continue;
        }
        let side = |part: usize| h.vertices.iter().copied().filter(move |&x| c.part_of(x) == part);

        // Case 1
        let case1 = side(1).find_map(|v| {
            g.neighbors(v).find(|&x| c.part_of(x) >= 2).map(|x| (v, x))
        });
        if let Some((v, x)) = case1 {
            let targets = side(0).map(|u| (u, false)).chain(side(1).filter(|&u| u != v).map(|u| (u, true)));
            switch(w, &ParityTarget {
                edges: h.edges.clone(),
                toggle: (1, 2),
                targets: targets.collect(),
                free: v,
            }, Stage::Case1)?;
            if w.d(v, 2).is_multiple_of(2) {
                w.set_between(v, x, 2, Stage::Case1, "odd 2-degree via V3/V4 edge");
            }
            continue;
        }

        // Case 2
        let case2 = side(0).filter(|&u| w.is_mono(u, 1)).find_map(|u| {
            g.neighbors(u).find(|&x| c.part_of(x) == 1 && w.is_mono(x, 3)).map(|x| (u, x))
        });
        if let Some((u, x)) = case2 {
            let targets = side(1).map(|v| (v, true)).chain(side(0).filter(|&v| v != u).map(|v| (v, false)));
            switch(w, &ParityTarget {
                edges: h.edges.clone(),
                toggle: (1, 2),
                targets: targets.collect(),
                free: u,
            }, Stage::Case2)?;
            if w.d(u, 2) % 2 == 1 {
                w.set_between(u, x, 3, Stage::Case2, "bichromatic via 3-monochromatic V2");
            }
            continue;
        }

        // Case 3
        let case3 = side(0).filter(|&u| w.is_mono(u, 1)).find(|&u| {
            g.neighbors(u).filter(|x| h.vertices.contains(x)).count() >= 2
        });
        if let Some(u) = case3 {
            case_three(w, c, h, u)?;
            continue;
        }

        residual(w, c, h)?;
    }
    Ok(())
}

fn case_three(w: &mut Work, c: &NormalizedColouring, h: &Component, u: Vertex) -> Result<(), ConstructionError> {
    let g = w.g;
    let centre_edges: Vec<Vertex> = g.neighbors(u).filter(|x| h.vertices.contains(x)).collect();
    let rest: Vec<EdgeId> = h
        .edges
        .iter()
        .copied()
        .filter(|&e| {
            let (a, b) = g.edge(e);
            a != u && b != u
        })
        .collect();
    // components of H - u, found by flooding from each v_i in id order
    let mut done = BTreeSet::new();
    for &vi in &centre_edges {
        if done.contains(&vi) {
            continue;
        }
        let mut verts = BTreeSet::from([vi]);
        let mut edges = Vec::new();
        let mut stack = vec![vi];
        while let Some(x) = stack.pop() {
            for &(y, e) in g.incident(x) {
                if rest.binary_search(&e).is_ok() {
                    if x < y {
                        edges.push(e);
                    }
                    if verts.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let targets = verts
            .iter()
            .filter(|&&x| x != vi)
            .map(|&x| (x, c.part_of(x) == 1))
            .collect();
        switch(w, &ParityTarget {
            edges,
            toggle: (1, 2),
            targets,
            free: vi,
        }, Stage::Case3)?;
        done.extend(verts);
    }
    for &vi in &centre_edges {
        w.set_between(u, vi, 3, Stage::Case3, "centre becomes 3-monochromatic");
    }
    Ok(())
}

fn residual(w: &mut Work, c: &NormalizedColouring, h: &Component) -> Result<(), ConstructionError> {
    let g = w.g;
    for &x in &h.vertices {
        if !w.is_mono(x, 1) {
            continue;
        }
        let ok = (c.part_of(x) != 0 || g.degree(x) == 1) && g.neighbors(x).all(|y| !w.is_bichromatic(y));
        w.milestone(ok, || format!("{REMAINING_CLAIM} (vertex {x})"))?;
    }
    w.trace.passed(REMAINING_CLAIM);

    let mono_v1 = |w: &Work, v: Vertex| -> Vec<Vertex> {
        g.neighbors(v).filter(|&x| c.part_of(x) == 0 && w.is_mono(x, 1)).collect()
    };
    loop {
        let pick = h
            .vertices
            .iter()
            .copied()
            .filter(|&v| c.part_of(v) == 1 && w.is_mono(v, 1))
            .find_map(|v| match mono_v1(w, v).as_slice() {
                [u1, u2, ..] => Some((v, *u1, *u2)),
                _ => None,
            });
        let Some((v, u1, u2)) = pick else { break };
        w.set_between(v, u1, 3, Stage::Pendants, "two pendants");
        w.set_between(v, u2, 3, Stage::Pendants, "two pendants");
    }

    let v2s: Vec<Vertex> = h.vertices.iter().copied().filter(|&v| c.part_of(v) == 1).collect();
    for v in v2s {
        if !w.is_mono(v, 1) {
            continue;
        }
        let Some(&u) = mono_v1(w, v).first() else { continue };
        let other = g.neighbors(v).find(|&x| x != u && c.part_of(x) == 0 && w.label_between(v, x) == 1);
        let ok = other.is_some_and(|x| w.is_mono(x, 2));
        w.milestone(ok, || format!("{FINAL_FIX_CLAIM} (vertex {v})"))?;
        let x = other.expect("checked");
        w.set_between(x, v, 2, Stage::FinalFix, "keeps neighbour 2-monochromatic");
        w.set_between(v, u, 3, Stage::FinalFix, "pendant becomes 3-monochromatic");
    }
    w.trace.passed(FINAL_FIX_CLAIM);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::products;

    #[test]
    fn k4_hand_trace() {
        // v1..v4 are vertices 0..3, one per part
        let g = Graph::complete(4);
        let c = normalize_colouring(&g, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let out = label_four_chromatic_with(&g, &c).unwrap();
        let l = &out.labelling;
        assert_eq!(l.between(&g, 3, 0), 2);
        assert_eq!(l.between(&g, 3, 2), 3);
        assert_eq!(l.between(&g, 3, 1), 3);
        assert_eq!(l.between(&g, 2, 0), 2);
        assert_eq!(l.between(&g, 2, 1), 1);
        assert_eq!(l.between(&g, 0, 1), 1);
        let values: Vec<u64> = products(&g, l)
            .iter()
            .map(|p| p.value().try_into().unwrap())
            .collect();
        assert_eq!(values, vec![4, 3, 6, 18]);
        assert_eq!(out.trace.replay(&g, 3), out.labelling);
    }

    #[test]
    fn wrong_chromatic_number() {
        assert_eq!(
            label_four_chromatic(&Graph::cycle(5)),
            Err(ConstructionError::WrongChromaticNumber { expected: 4, found: 3 })
        );
        assert_eq!(
            label_four_chromatic(&Graph::complete(4).disjoint_union(&Graph::complete(2))),
            Err(ConstructionError::NotNice)
        );
    }

    #[test]
    fn small_four_chromatic_graphs() {
        // W_5 (odd wheel), K_4 with a pendant path, and K_4 plus a triangle
        let wheel = Graph::from_edges(6, (1..6).flat_map(|i| [(0, i), (i, i % 5 + 1)])).unwrap();
        let pendant = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        let two = Graph::complete(4).disjoint_union(&Graph::complete(3));
        for g in [wheel, pendant, two] {
            let out = label_four_chromatic(&g).unwrap();
            assert!(is_p_proper(&g, &out.labelling));
            assert_eq!(out.trace.replay(&g, 3), out.labelling);
        }
    }
}
