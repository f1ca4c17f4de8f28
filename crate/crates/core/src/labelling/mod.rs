//! Edge labellings and the vertex functions they induce: label counts
//! (multisets), sums, and products. Products are kept in prime-exponent form
//! so that they never overflow and compare exactly.

mod json;
mod shape;

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};

pub use json::{LabellingJson, SCHEMA_VERSION};
pub use shape::{
    check_shape, class_partition, conflicts, ClassShape, ConflictReport, Requirement, Shape,
    ShapeReport,
};

pub type Label = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabellingError {
    #[error("labelling has {found} labels but the graph has {expected} edges")]
    WrongLength { expected: usize, found: usize },
    #[error("label {label} on edge {u}-{v} is outside 1..={k}")]
    OutOfRange { u: Vertex, v: Vertex, label: Label, k: Label },
    #[error("edge {0}-{1} has no label")]
    MissingEdge(Vertex, Vertex),
    #[error("edge {0}-{1} is not in the graph")]
    UnknownEdge(Vertex, Vertex),
    #[error("edge {0}-{1} is labelled twice")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex label entry for {0} is invalid")]
    BadVertexLabel(Vertex),
    #[error("malformed labelling document: {0}")]
    Json(String),
}

/// Total map from edge ids to labels in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeLabelling {
    k: Label,
    labels: Vec<Label>,
}

impl EdgeLabelling {
    pub fn new(g: &Graph, k: Label, labels: Vec<Label>) -> Result<Self, LabellingError> {
        if labels.len() != g.m() {
            return Err(LabellingError::WrongLength {
                expected: g.m(),
                found: labels.len(),
            });
        }
        if let Some(e) = labels.iter().position(|&l| l == 0 || l > k) {
            let (u, v) = g.edge(e);
            return Err(LabellingError::OutOfRange { u, v, label: labels[e], k });
        }
        Ok(EdgeLabelling { k, labels })
    }

    pub fn constant(g: &Graph, k: Label, label: Label) -> Self {
        assert!(label >= 1 && label <= k);
        EdgeLabelling {
            k,
            labels: vec![label; g.m()],
        }
    }

    /// Builds from `(u, v, label)` triples covering every edge exactly once.
    pub fn from_triples(
        g: &Graph,
        k: Label,
        triples: impl IntoIterator<Item = (Vertex, Vertex, Label)>,
    ) -> Result<Self, LabellingError> {
        let mut labels = vec![0; g.m()];
        for (u, v, l) in triples {
            let e = g.edge_id(u, v).ok_or(LabellingError::UnknownEdge(u, v))?;
            if labels[e] != 0 {
                return Err(LabellingError::DuplicateEdge(u, v));
            }
            if l == 0 || l > k {
                return Err(LabellingError::OutOfRange { u, v, label: l, k });
            }
            labels[e] = l;
        }
        if let Some(e) = labels.iter().position(|&l| l == 0) {
            let (u, v) = g.edge(e);
            return Err(LabellingError::MissingEdge(u, v));
        }
        Ok(EdgeLabelling { k, labels })
    }

    #[inline]
    pub fn k(&self) -> Label {
        self.k
    }

    #[inline]
    pub fn label(&self, e: EdgeId) -> Label {
        self.labels[e]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn set(&mut self, e: EdgeId, label: Label) {
        assert!(label >= 1 && label <= self.k, "label {label} outside 1..={}", self.k);
        self.labels[e] = label;
    }

    /// Label of edge `uv`; panics if `uv` is not an edge of `g`.
    pub fn between(&self, g: &Graph, u: Vertex, v: Vertex) -> Label {
        self.labels[g.edge_id(u, v).expect("not an edge")]
    }

    /// Same labels, larger label range.
    pub fn widened(&self, k: Label) -> Self {
        assert!(k >= self.k);
        EdgeLabelling {
            k,
            labels: self.labels.clone(),
        }
    }
}

/// Number of incident edges per label: `counts[i]` is the `(i+1)`-degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSignature {
    pub counts: Vec<u32>,
}

impl VertexSignature {
    /// The `i`-degree, for `i` in `1..=k`.
    pub fn degree_of(&self, label: Label) -> u32 {
        self.counts[label as usize - 1]
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }
}

pub fn signature(g: &Graph, l: &EdgeLabelling, v: Vertex) -> VertexSignature {
    let mut counts = vec![0; l.k as usize];
    for &(_, e) in g.incident(v) {
        counts[l.labels[e] as usize - 1] += 1;
    }
    VertexSignature { counts }
}

pub fn sum(g: &Graph, l: &EdgeLabelling, v: Vertex) -> u64 {
    g.incident(v).iter().map(|&(_, e)| l.labels[e] as u64).sum()
}

/// Canonical form of a product of labels: exponent of the `i`-th prime at
/// position `i`, over the primes up to the label bound. For 3-labellings
/// this is the pair `(d_2, d_3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductClass {
    pub exponents: Vec<u32>,
}

impl ProductClass {
    pub fn one(k: Label) -> Self {
        ProductClass {
            exponents: vec![0; primes_up_to(k).len()],
        }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Multiplies by `label` in place.
    pub fn mul_label(&mut self, label: Label) {
        let primes = primes_up_to(label.max(2));
        let mut x = label as u32;
        for (i, &p) in primes.iter().enumerate() {
            while x.is_multiple_of(p) {
                if i >= self.exponents.len() {
                    self.exponents.resize(i + 1, 0);
                }
                self.exponents[i] += 1;
                x /= p;
            }
        }
    }

    /// Exact integer value.
    pub fn value(&self) -> BigUint {
        let primes = first_primes(self.exponents.len());
        let mut acc = BigUint::from(1u32);
        for (&p, &e) in primes.iter().zip(&self.exponents) {
            acc *= BigUint::from(p).pow(e);
        }
        acc
    }
}

fn is_prime(x: u32) -> bool {
    x >= 2 && (2..x).take_while(|d| d * d <= x).all(|d| !x.is_multiple_of(d))
}

pub(crate) fn primes_up_to(k: Label) -> Vec<u32> {
    (2..=k as u32).filter(|&x| is_prime(x)).collect()
}

fn first_primes(count: usize) -> Vec<u32> {
    (2..).filter(|&x| is_prime(x)).take(count).collect()
}

pub fn product(g: &Graph, l: &EdgeLabelling, v: Vertex) -> ProductClass {
    let mut pc = ProductClass::one(l.k);
    for &(_, e) in g.incident(v) {
        let label = l.labels[e];
        if label > 1 {
            pc.mul_label(label);
        }
    }
    pc
}

pub fn products(g: &Graph, l: &EdgeLabelling) -> Vec<ProductClass> {
    (0..g.n()).map(|v| product(g, l, v)).collect()
}

pub fn is_p_proper(g: &Graph, l: &EdgeLabelling) -> bool {
    let p = products(g, l);
    g.edges().iter().all(|&(u, v)| p[u] != p[v])
}

pub fn is_m_proper(g: &Graph, l: &EdgeLabelling) -> bool {
    let s: Vec<_> = (0..g.n()).map(|v| signature(g, l, v)).collect();
    g.edges().iter().all(|&(u, v)| s[u] != s[v])
}

pub fn is_s_proper(g: &Graph, l: &EdgeLabelling) -> bool {
    let s: Vec<_> = (0..g.n()).map(|v| sum(g, l, v)).collect();
    g.edges().iter().all(|&(u, v)| s[u] != s[v])
}

/// Edge labels in `1..=3` plus vertex labels in `1..=2`; a vertex's total
/// product is its edge product times its own label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalLabelling {
    pub edges: EdgeLabelling,
    pub vertices: Vec<Label>,
}

impl TotalLabelling {
    pub fn new(g: &Graph, edges: EdgeLabelling, vertices: Vec<Label>) -> Result<Self, LabellingError> {
        if edges.k() > 3 {
            return Err(LabellingError::Json(format!("edge labels must lie in 1..=3, k={}", edges.k())));
        }
        if vertices.len() != g.n() {
            return Err(LabellingError::BadVertexLabel(vertices.len()));
        }
        if let Some(v) = vertices.iter().position(|&l| l == 0 || l > 2) {
            return Err(LabellingError::BadVertexLabel(v));
        }
        Ok(TotalLabelling { edges, vertices })
    }

    pub fn total_product(&self, g: &Graph, v: Vertex) -> ProductClass {
        let mut pc = product(g, &self.edges, v);
        if pc.exponents.len() < 2 {
            pc.exponents.resize(2, 0);
        }
        pc.mul_label(self.vertices[v]);
        pc
    }

    pub fn conflicts(&self, g: &Graph) -> Vec<(Vertex, Vertex)> {
        let p: Vec<_> = (0..g.n()).map(|v| self.total_product(g, v)).collect();
        g.edges().iter().copied().filter(|&(u, v)| p[u] == p[v]).collect()
    }

    pub fn is_total_p_proper(&self, g: &Graph) -> bool {
        self.conflicts(g).is_empty()
    }
}
