use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use super::{ConstructionError, Stage, Work};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::labelling::{EdgeLabelling, Label};

/// A connected subgraph `H` (given by its edges), a pair of labels to swap,
/// the wanted parity of `d_b` for every vertex of `H` but the free one, and
/// the free vertex itself. Parities count `d_b` over the whole host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityTarget {
    pub edges: Vec<EdgeId>,
    pub toggle: (Label, Label),
    /// `(vertex, wants odd d_b)`.
    pub targets: Vec<(Vertex, bool)>,
    pub free: Vertex,
}

/// Swaps labels `a` and `b` on edges of `H` until every targeted vertex has
/// the wanted parity of `d_b`. Works on a BFS spanning tree of `H` rooted at
/// the free vertex: vertices are settled from the leaves up, each one by
/// toggling the edge to its parent, so the root absorbs whatever is left.
pub fn parity_switch(
    g: &Graph,
    l: &EdgeLabelling,
    target: &ParityTarget,
) -> Result<EdgeLabelling, ConstructionError> {
    if l.k() > 3 {
        return Err(ConstructionError::Parity(format!("labelling uses k = {}", l.k())));
    }
    let mut work = Work::from_labelling(g, l);
    switch(&mut work, target, Stage::Components)?;
    Ok(work.finish().0)
}

pub(crate) fn switch(work: &mut Work, t: &ParityTarget, stage: Stage) -> Result<(), ConstructionError> {
    let (a, b) = t.toggle;
    if !matches!((a, b), (1, 2) | (1, 3)) || b > work.k {
        return Err(ConstructionError::Parity(format!("toggle ({a},{b}) is not allowed")));
    }
    let g = work.g;
    let mut adj: BTreeMap<Vertex, Vec<(Vertex, EdgeId)>> = BTreeMap::new();
    adj.entry(t.free).or_default();
    for &e in &t.edges {
        let (u, v) = g.edge(e);
        let label = work.label(e);
        if label != a && label != b {
            return Err(ConstructionError::Parity(format!(
                "edge {u}-{v} carries label {label}, outside ({a},{b})"
            )));
        }
        adj.entry(u).or_default().push((v, e));
        adj.entry(v).or_default().push((u, e));
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let wants: HashMap<Vertex, bool> = t.targets.iter().copied().collect();
    if let Some(&(v, _)) = t.targets.iter().find(|(v, _)| !adj.contains_key(v)) {
        return Err(ConstructionError::Parity(format!("target vertex {v} is not in H")));
    }
    if let Some(&v) = adj.keys().find(|&&v| v != t.free && !wants.contains_key(&v)) {
        return Err(ConstructionError::Parity(format!("vertex {v} of H has no target")));
    }

    let mut parent: HashMap<Vertex, EdgeId> = HashMap::new();
    let mut order = vec![t.free];
    let mut queue = VecDeque::from([t.free]);
    let mut seen = HashSet::from([t.free]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in &adj[&x] {
            if seen.insert(y) {
                parent.insert(y, e);
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    if order.len() != adj.len() {
        let unreached: Vec<Vertex> = adj.keys().copied().filter(|v| !seen.contains(v)).collect();
        return Err(ConstructionError::Parity(format!("H is disconnected; unreached {unreached:?}")));
    }
    for &x in order.iter().skip(1).rev() {
        if (work.d(x, b) % 2 == 1) != wants[&x] {
            let e = parent[&x];
            let flipped = if work.label(e) == a { b } else { a };
            work.set(e, flipped, stage, "parity switch");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::path(2);
        let l = EdgeLabelling::constant(&g, 2, 1);
        let t = ParityTarget {
            edges: vec![0],
            toggle: (1, 2),
            targets: vec![(0, true)],
            free: 1,
        };
        assert_eq!(parity_switch(&g, &l, &t).unwrap().labels(), &[2]);
    }

    #[test]
    fn path_of_three() {
        // u=0, w=1, v=2
        let g = Graph::path(3);
        let l = EdgeLabelling::constant(&g, 2, 1);
        let t = ParityTarget {
            edges: vec![0, 1],
            toggle: (1, 2),
            targets: vec![(0, true), (1, false)],
            free: 2,
        };
        let out = parity_switch(&g, &l, &t).unwrap();
        assert_eq!(out.between(&g, 0, 1), 2);
        assert_eq!(out.between(&g, 1, 2), 2);
    }

    #[test]
    fn satisfied_targets_are_a_fixpoint() {
        let g = Graph::path(3);
        let l = EdgeLabelling::new(&g, 3, vec![3, 1]).unwrap();
        let t = ParityTarget {
            edges: vec![0, 1],
            toggle: (1, 3),
            targets: vec![(0, true), (1, true)],
            free: 2,
        };
        assert_eq!(parity_switch(&g, &l, &t).unwrap(), l);
    }

    #[test]
    fn disconnected_h_is_rejected() {
        let g = Graph::path(4);
        let l = EdgeLabelling::constant(&g, 2, 1);
        let t = ParityTarget {
            edges: vec![0, 2],
            toggle: (1, 2),
            targets: vec![(0, true), (2, true), (3, true)],
            free: 1,
        };
        assert!(matches!(parity_switch(&g, &l, &t), Err(ConstructionError::Parity(_))));
    }

    #[test]
    fn counts_labels_outside_h() {
        // star centre 0 with leaves 1,2,3; edge 0-3 is labelled 2 outside H
        let g = Graph::star(3);
        let mut l = EdgeLabelling::constant(&g, 2, 1);
        l.set(g.edge_id(0, 3).unwrap(), 2);
        let t = ParityTarget {
            edges: vec![g.edge_id(0, 1).unwrap(), g.edge_id(0, 2).unwrap()],
            toggle: (1, 2),
            targets: vec![(0, false), (2, false)],
            free: 1,
        };
        let out = parity_switch(&g, &l, &t).unwrap();
        // centre already had one 2, so it needs exactly one more
        assert_eq!(out.between(&g, 0, 1), 2);
        assert_eq!(out.between(&g, 0, 2), 1);
        assert_eq!(out.between(&g, 0, 3), 2);
    }
}
