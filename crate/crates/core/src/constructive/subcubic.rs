use std::collections::VecDeque;

use super::{Construction, ConstructionError, Stage, Work};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::labelling::Label;

const EXTENSION_CLAIM: &str = "every re-added vertex has an extension keeping all classes forests";

/// Label patterns for a re-added vertex of degree `d`, in the order the
/// induction tries them: all 1s first, then a single 2 (earliest neighbour
/// first), then two 2s, then three.
fn candidates(d: usize) -> Vec<Vec<Label>> {
    let mut out: Vec<Vec<Label>> = (0..1u32 << d)
        .map(|mask| (0..d).map(|i| if mask >> i & 1 == 1 { 2 } else { 1 }).collect())
        .collect();
    out.sort_by_key(|c: &Vec<Label>| {
        let twos = c.iter().filter(|&&l| l == 2).count();
        // among equal counts, 2s on earlier neighbours come first
        let key: Vec<u8> = c.iter().map(|&l| 2 - l).collect();
        (twos, key)
    });
    out
}

/// 2-labelling of a graph with maximum degree at most 3 in which every
/// class induces a forest. Vertices of minimum degree (smallest id on ties)
/// are peeled until at most one edge is left, which gets label 1; they are
/// then put back in reverse order, each taking the first label pattern on
/// its edges that keeps every class acyclic.
pub fn label_subcubic_two(g: &Graph) -> Result<Construction, ConstructionError> {
    if g.max_degree() > 3 {
        return Err(ConstructionError::MaxDegree {
            limit: 3,
            found: g.max_degree(),
        });
    }
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut edges_left = g.m();
    let mut peeled = Vec::new();
    while edges_left > 1 {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("edges remain, so vertices do");
        alive[v] = false;
        edges_left -= deg[v];
        for u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
        peeled.push(v);
    }

    let mut s = State {
        g,
        present: alive,
        labels: vec![1; g.m()],
        d2: vec![0; n],
        mark: vec![0; n],
        stamp: 0,
    };
    let mut w = Work::new(g, 2);
    for &v in peeled.iter().rev() {
        s.present[v] = true;
        let incident: Vec<(Vertex, EdgeId)> =
            g.incident(v).iter().copied().filter(|&(u, _)| s.present[u]).collect();
        let mut chosen = None;
        for pattern in candidates(incident.len()) {
            s.assign(&incident, v, &pattern);
            let affected = std::iter::once(v).chain(incident.iter().map(|&(u, _)| u));
            if affected.collect::<Vec<_>>().into_iter().all(|x| s.class_is_acyclic_at(x)) {
                chosen = Some(pattern);
                break;
            }
            s.assign(&incident, v, &vec![1; incident.len()]);
        }
        w.milestone(chosen.is_some(), || format!("{EXTENSION_CLAIM} (vertex {v})"))?;
        for (&(_, e), &label) in incident.iter().zip(chosen.as_ref().expect("checked")) {
            if label == 2 {
                w.set(e, 2, Stage::Subcubic, "re-added vertex");
            }
        }
    }
    w.trace.passed(EXTENSION_CLAIM);
    let (labelling, trace) = w.finish();
    Ok(Construction {
        labelling,
        trace,
        repairs: 0,
    })
}

struct State<'g> {
    g: &'g Graph,
    present: Vec<bool>,
    labels: Vec<Label>,
    // 2-degree over present edges; with labels in {1,2} this is the class
    d2: Vec<u32>,
    mark: Vec<usize>,
    stamp: usize,
}

impl State<'_> {
    fn assign(&mut self, incident: &[(Vertex, EdgeId)], v: Vertex, pattern: &[Label]) {
        for (&(u, e), &label) in incident.iter().zip(pattern) {
            let old = self.labels[e];
            if old != label {
                for x in [u, v] {
                    if label == 2 {
                        self.d2[x] += 1;
                    } else {
                        self.d2[x] -= 1;
                    }
                }
                self.labels[e] = label;
            }
        }
    }

    /// Whether the component of `x` in the subgraph induced by its class
    /// (among present vertices) is a tree.
    fn class_is_acyclic_at(&mut self, x: Vertex) -> bool {
        self.stamp += 1;
        let class = self.d2[x];
        let (mut verts, mut twice_edges) = (0usize, 0usize);
        self.mark[x] = self.stamp;
        let mut queue = VecDeque::from([x]);
        while let Some(a) = queue.pop_front() {
            verts += 1;
            for b in self.g.neighbors(a) {
                if !self.present[b] || self.d2[b] != class {
                    continue;
                }
                twice_edges += 1;
                if self.mark[b] != self.stamp {
                    self.mark[b] = self.stamp;
                    queue.push_back(b);
                }
            }
        }
        twice_edges / 2 < verts
    }
}
