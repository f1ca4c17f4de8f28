//! Simple undirected graphs on dense vertex ids, plus the structural queries
//! the labelling algorithms lean on (components, BFS layers, bipartition).

mod edge_list;
mod graph6;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub use edge_list::{parse_edge_list, to_edge_list, EdgeListInput};
pub use graph6::{parse_graph6, to_graph6};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("graph is disconnected; unreached vertices: {unreached:?}")]
    Disconnected { unreached: Vec<Vertex> },
    #[error("graph is not bipartite; odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<Vertex> },
}

/// A simple undirected graph. Edges are stored once as `(u, v)` with `u < v`,
/// sorted lexicographically; the position in that list is the edge id used by
/// every labelling.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    // per vertex: (neighbour, edge id), sorted by neighbour
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, silently collapsing repeated edges. Self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are valid")
    }

    pub fn complete_multipartite(sizes: &[usize]) -> Graph {
        let mut part = Vec::new();
        for (i, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat_n(i, s));
        }
        let n = part.len();
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| part[u] != part[v]);
        Graph::from_edges(n, edges.collect::<Vec<_>>()).expect("multipartite edges are valid")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen edges are valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::from_edges(self.n + other.n, edges.collect::<Vec<_>>()).expect("union is valid")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v]));
        Graph::from_edges(self.n, edges.collect::<Vec<_>>()).expect("permutation preserves validity")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// `(neighbour, edge id)` pairs, sorted by neighbour.
    #[inline]
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.adj
            .get(u)?
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Other end of edge `e` seen from `v`.
    #[inline]
    pub fn opposite(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// No component is a lone edge.
    pub fn is_nice(&self) -> bool {
        self.connected_components()
            .iter()
            .all(|c| !(c.len() == 2 && self.degree(c[0]) == 1))
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]` of `self`. Duplicates in `vertices` are ignored.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        let mut index = vec![usize::MAX; self.n];
        let mut map = Vec::with_capacity(vertices.len());
        for &v in vertices {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            if index[v] == usize::MAX {
                index[v] = map.len();
                map.push(v);
            }
        }
        let mut edges = Vec::new();
        for &v in &map {
            for u in self.neighbors(v) {
                if v < u && index[u] != usize::MAX {
                    edges.push((index[v], index[u]));
                }
            }
        }
        let g = Graph::from_edges(map.len(), edges)?;
        Ok((g, map))
    }

    /// BFS distance layers from `root`. Fails on disconnected input.
    pub fn bfs_layers(&self, root: Vertex) -> Result<Layering, GraphError> {
        if root >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: root, n: self.n });
        }
        let dist = self.bfs_distances(root);
        let unreached: Vec<_> = (0..self.n).filter(|&v| dist[v] == usize::MAX).collect();
        if !unreached.is_empty() {
            return Err(GraphError::Disconnected { unreached });
        }
        let depth = dist.iter().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); depth + 1];
        for v in 0..self.n {
            layers[dist[v]].push(v);
        }
        Ok(Layering {
            root,
            layer_of: dist,
            layers,
        })
    }

    fn bfs_distances(&self, root: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Two-colouring side per vertex, or an odd cycle as witness.
    pub fn bipartition(&self) -> Result<Vec<bool>, GraphError> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for u in self.neighbors(v) {
                    match side[u] {
                        None => {
                            side[u] = Some(!sv);
                            parent[u] = v;
                            queue.push_back(u);
                        }
                        Some(su) if su == sv => {
                            return Err(GraphError::NotBipartite {
                                cycle: odd_cycle(&parent, v, u),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }

    /// True if the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.m() + self.connected_components().len() == self.n
    }
}

// Joins the BFS tree paths of the two ends of a same-side edge.
fn odd_cycle(parent: &[usize], a: Vertex, b: Vertex) -> Vec<Vertex> {
    let path_to_root = |mut v: Vertex| {
        let mut p = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let pa = path_to_root(a);
    let pb = path_to_root(b);
    let mut ia = pa.len();
    let mut ib = pb.len();
    while ia > 0 && ib > 0 && pa[ia - 1] == pb[ib - 1] {
        ia -= 1;
        ib -= 1;
    }
    // pa[ia] == pb[ib] is the lowest common ancestor
    let mut cycle: Vec<Vertex> = pa[..=ia].to_vec();
    cycle.extend(pb[..ib].iter().rev());
    cycle
}

/// Partition of a connected graph's vertices by distance from a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    pub root: Vertex,
    pub layer_of: Vec<usize>,
    pub layers: Vec<Vec<Vertex>>,
}

impl Layering {
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_range() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = Graph::from_edges(4, [(2, 0), (0, 1), (1, 2), (0, 2), (3, 1)]).unwrap();
        assert_eq!(g.m(), 4);
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            assert!(u < v);
            assert_eq!(g.edge_id(u, v), Some(id));
            assert_eq!(g.edge_id(v, u), Some(id));
        }
        let degree_sum: usize = (0..4).map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.m());
        assert!(!g.has_edge(0, 3));
    }

    #[test]
    fn bfs_layers_examples() {
        let p4 = Graph::path(4);
        assert_eq!(p4.bfs_layers(0).unwrap().layers, vec![vec![0], vec![1], vec![2], vec![3]]);
        let star = Graph::star(3);
        assert_eq!(star.bfs_layers(0).unwrap().layers, vec![vec![0], vec![1, 2, 3]]);
        let c4 = Graph::cycle(4);
        assert_eq!(c4.bfs_layers(0).unwrap().layers, vec![vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn bfs_layers_disconnected() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert_eq!(
            g.bfs_layers(0),
            Err(GraphError::Disconnected { unreached: vec![2, 3] })
        );
    }

    #[test]
    fn niceness() {
        assert!(!Graph::complete(2).is_nice());
        assert!(Graph::complete(3).is_nice());
        assert!(!Graph::complete(3).disjoint_union(&Graph::complete(2)).is_nice());
        assert!(Graph::empty(1).is_nice());
    }

    #[test]
    fn induced_subgraph_examples() {
        let (k2, map) = Graph::complete(3).induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(k2, Graph::complete(2));
        assert_eq!(map, vec![0, 1]);
        let (e, _) = Graph::petersen().induced_subgraph(&[]).unwrap();
        assert_eq!(e.n(), 0);
        let (two, _) = Graph::cycle(4).induced_subgraph(&[0, 2]).unwrap();
        assert_eq!(two, Graph::empty(2));
        assert!(Graph::cycle(4).induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        for g in [Graph::complete(3), Graph::cycle(5), Graph::petersen(), Graph::cycle(7)] {
            let Err(GraphError::NotBipartite { cycle }) = g.bipartition() else {
                panic!("expected odd cycle");
            };
            assert_eq!(cycle.len() % 2, 1);
            for i in 0..cycle.len() {
                assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
            }
        }
        assert!(Graph::cycle(6).is_bipartite());
    }

    #[test]
    fn petersen_is_cubic() {
        let g = Graph::petersen();
        assert_eq!(g.m(), 15);
        assert!(g.is_regular());
        assert_eq!(g.max_degree(), 3);
    }
}
