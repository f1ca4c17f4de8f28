//! Canonical labelling for small graphs (at most 16 vertices) by ordered
//! partition refinement and individualisation, with automorphism pruning.

use crate::graph::{Graph, Vertex};

pub const MAX_CANON_N: usize = 16;

/// Adjacency bits in graph6 order under the canonical relabelling, plus the
/// relabelling itself (`position[v]` is the canonical index of `v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canon {
    pub code: u128,
    pub position: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Canon {
    canonical_form_coloured(g, &vec![0; g.n()])
}

/// Canonical form respecting a vertex colouring: isomorphisms must preserve
/// colours, and colour classes occupy canonical positions in increasing
/// colour order.
pub fn canonical_form_coloured(g: &Graph, colours: &[u32]) -> Canon {
    let n = g.n();
    assert!(n <= MAX_CANON_N, "canonical form supports at most {MAX_CANON_N} vertices");
    assert_eq!(colours.len(), n);
    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).fold(0u16, |m, u| m | 1 << u))
        .collect();
    let mut palette: Vec<u32> = colours.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let mut cells: Vec<Vec<Vertex>> = palette
        .iter()
        .map(|&c| (0..n).filter(|&v| colours[v] == c).collect())
        .collect();
    cells.retain(|c| !c.is_empty());
    refine(&adj, &mut cells);
    let mut s = Search {
        adj: &adj,
        n,
        best: None,
        first: None,
        generators: Vec::new(),
    };
    s.descend(cells, &mut Vec::new());
    let best = s.best.expect("search reaches a leaf");
    Canon {
        code: best.code,
        position: best.position,
    }
}

/// Splits cells by neighbour counts into each splitter cell until stable.
/// New pieces are ordered by count, which keeps the result independent of
/// vertex names.
fn refine(adj: &[u16], cells: &mut Vec<Vec<Vertex>>) {
    'outer: loop {
        for si in 0..cells.len() {
            let mask = cells[si].iter().fold(0u16, |m, &v| m | 1 << v);
            let mut next: Vec<Vec<Vertex>> = Vec::with_capacity(cells.len() + 1);
            let mut split = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, Vertex)> =
                    cell.iter().map(|&v| ((adj[v] & mask).count_ones(), v)).collect();
                keyed.sort_unstable();
                let mut piece = vec![keyed[0].1];
                for w in keyed.windows(2) {
                    if w[1].0 != w[0].0 {
                        next.push(std::mem::take(&mut piece));
                        split = true;
                    }
                    piece.push(w[1].1);
                }
                next.push(piece);
            }
            if split {
                *cells = next;
                continue 'outer;
            }
        }
        return;
    }
}

struct Leaf {
    code: u128,
    position: Vec<usize>,
    path: Vec<Vertex>,
}

struct Search<'a> {
    adj: &'a [u16],
    n: usize,
    best: Option<Leaf>,
    first: Option<Leaf>,
    generators: Vec<Vec<Vertex>>,
}

impl Search<'_> {
    fn code_of(&self, position: &[usize]) -> u128 {
        let mut code = 0u128;
        for v in 0..self.n {
            let mut rest = self.adj[v];
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let (i, j) = (position[v].min(position[u]), position[v].max(position[u]));
                if i != j {
                    code |= 1u128 << (j * (j - 1) / 2 + i);
                }
            }
        }
        code
    }

    /// Returns `Some(level)` to abandon the search up to that level after an
    /// automorphism shows the current subtree repeats an explored one.
    fn descend(&mut self, cells: Vec<Vec<Vertex>>, path: &mut Vec<Vertex>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells, path);
        }
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| (cells[i].len(), i))
            .expect("partition is not discrete");
        let level = path.len();
        let mut explored: Vec<Vertex> = Vec::new();
        for &v in &cells[target] {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, path) {
                continue;
            }
            explored.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    next.push(vec![v]);
                    next.push(cell.iter().copied().filter(|&x| x != v).collect());
                } else {
                    next.push(cell.clone());
                }
            }
            refine(self.adj, &mut next);
            path.push(v);
            let back = self.descend(next, path);
            path.pop();
            if let Some(l) = back {
                if l < level {
                    return Some(l);
                }
            }
        }
        None
    }

    fn equivalent_to_explored(&self, v: Vertex, explored: &[Vertex], path: &[Vertex]) -> bool {
        let mut parent: Vec<Vertex> = (0..self.n).collect();
        fn find(p: &mut [Vertex], x: Vertex) -> Vertex {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for gamma in self.generators.iter().filter(|g| path.iter().all(|&p| g[p] == p)) {
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }

    fn leaf(&mut self, cells: &[Vec<Vertex>], path: &[Vertex]) -> Option<usize> {
        let mut position = vec![0; self.n];
        for (i, cell) in cells.iter().enumerate() {
            position[cell[0]] = i;
        }
        let code = self.code_of(&position);
        let leaf = Leaf {
            code,
            position,
            path: path.to_vec(),
        };
        if self.first.is_none() {
            self.first = Some(Leaf {
                code,
                position: leaf.position.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        }
        for reference in [self.first.as_ref(), self.best.as_ref()].into_iter().flatten() {
            if reference.code == code {
                // gamma(v) = the vertex at v's position in the reference leaf
                let mut at = vec![0; self.n];
                for (u, &p) in reference.position.iter().enumerate() {
                    at[p] = u;
                }
                let gamma: Vec<Vertex> = (0..self.n).map(|v| at[leaf.position[v]]).collect();
                let common = reference
                    .path
                    .iter()
                    .zip(path)
                    .take_while(|(a, b)| a == b)
                    .count();
                self.generators.push(gamma);
                return Some(common);
            }
        }
        if code < self.best.as_ref().expect("set above").code {
            self.best = Some(leaf);
        }
        None
    }
}

/// Relabels `g` so vertex `v` becomes `canon.position[v]`.
pub fn apply(g: &Graph, canon: &Canon) -> Graph {
    g.permuted(&canon.position)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_code(g: &Graph) -> u128 {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u128::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut code = 0u128;
            for &(u, v) in g.edges() {
                let (i, j) = (p[u].min(p[v]), p[u].max(p[v]));
                code |= 1u128 << (j * (j - 1) / 2 + i);
            }
            best = best.min(code);
        });
        best
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn isomorphic_graphs_share_codes() {
        let graphs = [
            Graph::petersen(),
            Graph::complete(7),
            Graph::empty(6),
            Graph::star(6),
            Graph::cycle(8),
            Graph::complete_multipartite(&[2, 3, 3]),
        ];
        for g in graphs {
            let c = canonical_form(&g);
            let n = g.n();
            for shift in 1..n {
                let perm: Vec<usize> = (0..n).map(|v| (v * 3 + shift) % n).collect();
                let perm = if n % 3 == 0 { (0..n).map(|v| (v + shift) % n).collect() } else { perm };
                let h = g.permuted(&perm);
                assert_eq!(canonical_form(&h).code, c.code);
            }
            assert_eq!(apply(&g, &c).edges().len(), g.m());
        }
    }

    #[test]
    fn distinguishes_non_isomorphic_pairs() {
        // C_6 versus two triangles; same degree sequence
        let c6 = Graph::cycle(6);
        let two = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_ne!(canonical_form(&c6).code, canonical_form(&two).code);
    }

    #[test]
    fn equality_matches_brute_force_on_five_vertices() {
        // all labelled graphs on 5 vertices: equal canonical codes exactly when
        // the brute-force minimum codes agree
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut seen = std::collections::HashMap::new();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::from_edges(5, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                .unwrap();
            let ours = canonical_form(&g).code;
            let theirs = brute_code(&g);
            if let Some(&prev) = seen.get(&theirs) {
                assert_eq!(prev, ours);
            } else {
                seen.insert(theirs, ours);
            }
        }
        assert_eq!(seen.len(), 34);
        let distinct: std::collections::HashSet<_> = seen.values().collect();
        assert_eq!(distinct.len(), 34);
    }
}
