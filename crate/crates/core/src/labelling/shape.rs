use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{products, EdgeLabelling, ProductClass};
use crate::graph::{Graph, Vertex};

/// Most specific description of the subgraph induced by one product class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Independent,
    SingleEdge,
    /// At least two disjoint edges, plus isolated vertices.
    Matching,
    /// One star with at least two leaves, plus isolated vertices.
    Star,
    Forest,
    Cyclic,
}

impl Shape {
    fn at_most_matching(self) -> bool {
        matches!(self, Shape::Independent | Shape::SingleEdge | Shape::Matching)
    }
}

/// Structural requirement on the classes `S_x` of a labelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    /// Every class independent, i.e. the labelling is p-proper.
    AllIndependent,
    /// `S_1` induces a matching plus isolated vertices; all other classes
    /// are independent.
    S1Matching,
    /// At most one class induces a single edge; all others independent.
    OneEdge,
    /// At most one class induces one star (possibly a single edge) plus
    /// isolated vertices; all others independent.
    OneStar,
    /// Every class induces a forest.
    AllForests,
}

impl Requirement {
    pub const ALL: [Requirement; 5] = [
        Requirement::AllIndependent,
        Requirement::S1Matching,
        Requirement::OneEdge,
        Requirement::OneStar,
        Requirement::AllForests,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Requirement::AllIndependent => "p-proper",
            Requirement::S1Matching => "s1-matching",
            Requirement::OneEdge => "one-edge",
            Requirement::OneStar => "one-star",
            Requirement::AllForests => "forests",
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Requirement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Requirement::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .or(match s {
                "all-independent" => Some(Requirement::AllIndependent),
                "all-forests" => Some(Requirement::AllForests),
                _ => None,
            })
            .ok_or_else(|| format!("unknown requirement {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassShape {
    pub product: ProductClass,
    pub vertices: Vec<Vertex>,
    /// Edges of `G[S_x]`.
    pub edges: Vec<(Vertex, Vertex)>,
    pub shape: Shape,
}

/// Verdict of [`check_shape`]: classes ordered by product, and the indices
/// of the classes that violate the requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub requirement: Requirement,
    pub classes: Vec<ClassShape>,
    pub violating: Vec<usize>,
}

impl ShapeReport {
    pub fn conforms(&self) -> bool {
        self.violating.is_empty()
    }

    /// Number of class edges lying in violating classes. Zero iff the
    /// labelling conforms, so usable as a local-search objective.
    pub fn score(&self) -> usize {
        self.violating.iter().map(|&i| self.classes[i].edges.len()).sum()
    }
}

/// Conflicting edges (equal products at both ends) plus every class shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictReport {
    pub conflicts: Vec<(Vertex, Vertex)>,
    pub classes: Vec<ClassShape>,
    pub worst: Shape,
}

impl ConflictReport {
    pub fn is_p_proper(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// `S_x` for every product `x` occurring, ordered by product.
pub fn class_partition(g: &Graph, l: &EdgeLabelling) -> Vec<(ProductClass, Vec<Vertex>)> {
    let mut map: HashMap<ProductClass, Vec<Vertex>> = HashMap::new();
    for (v, p) in products(g, l).into_iter().enumerate() {
        map.entry(p).or_default().push(v);
    }
    let mut out: Vec<_> = map.into_iter().collect();
    out.sort_by_cached_key(|(p, _)| p.value());
    out
}

fn class_shapes(g: &Graph, l: &EdgeLabelling) -> Vec<ClassShape> {
    let parts = class_partition(g, l);
    let mut class_of = vec![0usize; g.n()];
    for (i, (_, vs)) in parts.iter().enumerate() {
        for &v in vs {
            class_of[v] = i;
        }
    }
    let mut edges = vec![Vec::new(); parts.len()];
    for &(u, v) in g.edges() {
        if class_of[u] == class_of[v] {
            edges[class_of[u]].push((u, v));
        }
    }
    parts
        .into_iter()
        .zip(edges)
        .map(|((product, vertices), edges)| {
            let shape = classify(&edges);
            ClassShape {
                product,
                vertices,
                edges,
                shape,
            }
        })
        .collect()
}

/// Classifies a simple graph given by its edge list (isolated vertices do
/// not matter).
pub(crate) fn classify(edges: &[(Vertex, Vertex)]) -> Shape {
    match edges.len() {
        0 => return Shape::Independent,
        1 => return Shape::SingleEdge,
        _ => {}
    }
    let mut index: HashMap<Vertex, usize> = HashMap::new();
    for &(u, v) in edges {
        for w in [u, v] {
            let next = index.len();
            index.entry(w).or_insert(next);
        }
    }
    let nv = index.len();
    let mut degree = vec![0usize; nv];
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut cyclic = false;
    for &(u, v) in edges {
        let (a, b) = (index[&u], index[&v]);
        degree[a] += 1;
        degree[b] += 1;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            cyclic = true;
        } else {
            parent[ra] = rb;
        }
    }
    if cyclic {
        return Shape::Cyclic;
    }
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    if max_degree == 1 {
        Shape::Matching
    } else if max_degree == edges.len() {
        // one vertex touches every edge
        Shape::Star
    } else {
        Shape::Forest
    }
}

pub fn conflicts(g: &Graph, l: &EdgeLabelling) -> ConflictReport {
    let classes = class_shapes(g, l);
    let mut conflicts: Vec<_> = classes.iter().flat_map(|c| c.edges.iter().copied()).collect();
    conflicts.sort_unstable();
    let worst = classes.iter().map(|c| c.shape).max().unwrap_or(Shape::Independent);
    ConflictReport {
        conflicts,
        classes,
        worst,
    }
}

pub fn check_shape(g: &Graph, l: &EdgeLabelling, requirement: Requirement) -> ShapeReport {
    let classes = class_shapes(g, l);
    let nontrivial: Vec<usize> = (0..classes.len())
        .filter(|&i| classes[i].shape != Shape::Independent)
        .collect();
    let violating = match requirement {
        Requirement::AllIndependent => nontrivial,
        Requirement::S1Matching => nontrivial
            .into_iter()
            .filter(|&i| !(classes[i].product.is_one() && classes[i].shape.at_most_matching()))
            .collect(),
        Requirement::AllForests => nontrivial
            .into_iter()
            .filter(|&i| classes[i].shape == Shape::Cyclic)
            .collect(),
        Requirement::OneEdge | Requirement::OneStar => {
            let allowed = |s: Shape| match requirement {
                Requirement::OneEdge => s == Shape::SingleEdge,
                _ => matches!(s, Shape::SingleEdge | Shape::Star),
            };
            match nontrivial.as_slice() {
                [] => Vec::new(),
                [i] if allowed(classes[*i].shape) => Vec::new(),
                _ => nontrivial,
            }
        }
    };
    ShapeReport {
        requirement,
        classes,
        violating,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::is_p_proper;

    #[test]
    fn classify_shapes() {
        assert_eq!(classify(&[]), Shape::Independent);
        assert_eq!(classify(&[(0, 1)]), Shape::SingleEdge);
        assert_eq!(classify(&[(0, 1), (2, 3)]), Shape::Matching);
        assert_eq!(classify(&[(0, 1), (0, 2), (3, 0)]), Shape::Star);
        assert_eq!(classify(&[(0, 1), (1, 2), (2, 3)]), Shape::Forest);
        assert_eq!(classify(&[(0, 1), (0, 2), (3, 4)]), Shape::Forest);
        assert_eq!(classify(&[(0, 1), (1, 2), (0, 2)]), Shape::Cyclic);
    }

    #[test]
    fn k3_all_ones_is_a_triangle() {
        let g = Graph::complete(3);
        let l = EdgeLabelling::constant(&g, 3, 1);
        let r = check_shape(&g, &l, Requirement::AllForests);
        assert!(!r.conforms());
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.classes[0].shape, Shape::Cyclic);
        assert_eq!(conflicts(&g, &l).conflicts.len(), 3);
    }

    #[test]
    fn k3_one_edge_class() {
        let g = Graph::complete(3);
        // l(ab)=1, l(bc)=2, l(ca)=2: products a=2, b=2, c=4
        let l = EdgeLabelling::from_triples(&g, 3, [(0, 1, 1), (1, 2, 2), (2, 0, 2)]).unwrap();
        assert!(check_shape(&g, &l, Requirement::OneEdge).conforms());
        assert!(check_shape(&g, &l, Requirement::OneStar).conforms());
        assert!(check_shape(&g, &l, Requirement::AllForests).conforms());
        assert!(!check_shape(&g, &l, Requirement::AllIndependent).conforms());
        // S_2 is not S_1
        assert!(!check_shape(&g, &l, Requirement::S1Matching).conforms());
        let parts = class_partition(&g, &l);
        assert_eq!(parts[0].1, vec![0, 1]);
        assert_eq!(parts[1].1, vec![2]);
    }

    #[test]
    fn c4_example_has_no_conflicts() {
        // v1..v4 = 0..3 around the cycle: 12=1, 23=1, 34=2, 41=2
        let g = Graph::cycle(4);
        let l = EdgeLabelling::from_triples(&g, 3, [(0, 1, 1), (1, 2, 1), (2, 3, 2), (3, 0, 2)])
            .unwrap();
        let r = conflicts(&g, &l);
        assert!(r.conflicts.is_empty());
        assert_eq!(r.worst, Shape::Independent);
        let vals: Vec<u32> = (0..4)
            .map(|v| super::super::product(&g, &l, v).value().try_into().unwrap())
            .collect();
        assert_eq!(vals, vec![2, 1, 2, 4]);
    }

    #[test]
    fn partition_examples() {
        let p3 = Graph::path(3);
        let l = EdgeLabelling::constant(&p3, 3, 2);
        let parts = class_partition(&p3, &l);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].1, vec![0, 2]);
        assert_eq!(parts[1].1, vec![1]);
        let ones = class_partition(&p3, &EdgeLabelling::constant(&p3, 3, 1));
        assert_eq!(ones.len(), 1);
    }

    #[test]
    fn s1_matching_and_stars() {
        // P_4 with all ones: S_1 induces a path of length 3
        let p4 = Graph::path(4);
        let ones = EdgeLabelling::constant(&p4, 3, 1);
        assert!(!check_shape(&p4, &ones, Requirement::S1Matching).conforms());
        assert!(check_shape(&p4, &ones, Requirement::AllForests).conforms());
        // 2K_2 all ones: a matching in S_1, but two edges in one class
        let m = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let ones = EdgeLabelling::constant(&m, 3, 1);
        assert!(check_shape(&m, &ones, Requirement::S1Matching).conforms());
        assert!(!check_shape(&m, &ones, Requirement::OneStar).conforms());
        assert!(!check_shape(&m, &ones, Requirement::OneEdge).conforms());
        let star = Graph::star(3);
        let ones = EdgeLabelling::constant(&star, 2, 1);
        let r = check_shape(&star, &ones, Requirement::OneStar);
        assert!(r.conforms());
        assert_eq!(r.score(), 0);
        let r = check_shape(&star, &ones, Requirement::OneEdge);
        assert_eq!(r.score(), 3);
    }

    #[test]
    fn independence_matches_p_proper() {
        let g = Graph::petersen();
        let l = EdgeLabelling::new(&g, 3, (0..15).map(|i| (i % 3 + 1) as u8).collect()).unwrap();
        assert_eq!(
            check_shape(&g, &l, Requirement::AllIndependent).conforms(),
            is_p_proper(&g, &l)
        );
    }
}
