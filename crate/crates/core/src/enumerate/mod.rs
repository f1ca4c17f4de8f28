//! Isomorphism-free generation of small graphs by canonical augmentation.
//!
//! Graphs on `n` vertices are produced from those on `n - 1` by adding a
//! vertex with every admissible neighbourhood. A child is kept only when
//! the new vertex lies in the automorphism orbit of the child's canonical
//! deletion vertex (the one placed last by the canonical labelling), and
//! children of one parent are deduplicated by canonical code. Each
//! isomorphism class is then produced exactly once.
//!
//! Generation runs over all graphs since the family is hereditary under
//! vertex deletion; connectivity is a final filter. A degree bound is also
//! hereditary and prunes the tree directly.

mod canon;

use std::collections::HashSet;

pub use canon::{canonical_form, canonical_form_coloured, Canon, MAX_CANON_N};

use crate::graph::Graph;

/// Largest order the enumerator accepts.
pub const MAX_ENUMERATION_N: usize = 10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumOptions {
    pub max_degree: Option<usize>,
    pub connected_only: bool,
}

impl EnumOptions {
    pub fn connected() -> Self {
        EnumOptions {
            max_degree: None,
            connected_only: true,
        }
    }
}

/// One graph per isomorphism class on exactly `n` vertices, in canonical
/// labelling, in a deterministic order.
pub fn graphs(n: usize, opts: EnumOptions) -> Vec<Graph> {
    assert!(n <= MAX_ENUMERATION_N, "enumeration supports at most {MAX_ENUMERATION_N} vertices");
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let mut level = vec![Graph::empty(1)];
    for order in 2..=n {
        level = level.iter().flat_map(|p| children(p, opts.max_degree)).collect();
        debug_assert!(level.iter().all(|g| g.n() == order));
    }
    if opts.connected_only {
        level.retain(Graph::is_connected);
    }
    level
}

/// Connected graphs on 1..=max_n vertices, smallest first.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(|n| graphs(n, EnumOptions::connected())).collect()
}

fn children(parent: &Graph, max_degree: Option<usize>) -> Vec<Graph> {
    let p = parent.n();
    let v = p;
    let cap = max_degree.unwrap_or(usize::MAX);
    let open: Vec<usize> = (0..p).filter(|&u| parent.degree(u) < cap).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << open.len() {
        if mask.count_ones() as usize > cap {
            continue;
        }
        let extra = open
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &u)| (u, v));
        let edges: Vec<_> = parent.edges().iter().copied().chain(extra).collect();
        let child = Graph::from_edges(p + 1, edges).expect("new vertex edges are valid");
        let c = canonical_form(&child);
        if seen.contains(&c.code) {
            continue;
        }
        // only accepted children are remembered: an isomorphic child can
        // fail the test under one neighbourhood and pass under another
        let last = (0..=p).find(|&x| c.position[x] == p).expect("positions are a permutation");
        if last != v && !same_orbit(&child, last, v) {
            continue;
        }
        seen.insert(c.code);
        out.push(canon::apply(&child, &c));
    }
    out
}

/// Whether some automorphism of `g` maps `a` to `b`.
pub fn same_orbit(g: &Graph, a: usize, b: usize) -> bool {
    let marked = |x: usize| -> Vec<u32> { (0..g.n()).map(|v| u32::from(v == x)).collect() };
    canonical_form_coloured(g, &marked(a)).code == canonical_form_coloured(g, &marked(b)).code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_all_graphs() {
        let counts: Vec<usize> = (1..=7).map(|n| graphs(n, EnumOptions::default()).len()).collect();
        assert_eq!(counts, [1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn counts_of_connected_graphs() {
        let counts: Vec<usize> = (1..=7).map(|n| graphs(n, EnumOptions::connected()).len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn outputs_are_pairwise_non_isomorphic() {
        let gs = graphs(6, EnumOptions::default());
        let codes: HashSet<u128> = gs.iter().map(|g| canonical_form(g).code).collect();
        assert_eq!(codes.len(), gs.len());
    }

    #[test]
    fn connected_cubic_counts() {
        let cubic = |n| {
            let opts = EnumOptions {
                max_degree: Some(3),
                connected_only: true,
            };
            graphs(n, opts).into_iter().filter(|g| g.min_degree() == 3).count()
        };
        assert_eq!([cubic(4), cubic(6), cubic(8)], [1, 2, 5]);
    }

    #[test]
    fn orbits() {
        let g = Graph::star(3);
        assert!(same_orbit(&g, 1, 3));
        assert!(!same_orbit(&g, 0, 1));
        assert!(same_orbit(&Graph::petersen(), 0, 9));
    }
}
