use std::collections::VecDeque;

use super::{Outcome, Predicate, SearchResult};
use crate::budget::{Budget, BudgetExceeded, Meter};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::labelling::{primes_up_to, EdgeLabelling, Label};

/// Backtracking over edges in BFS order. Edges with a `Some` entry in `fixed`
/// keep that label. A vertex is checked against its already-complete
/// neighbours the moment its last incident edge is labelled; that is the
/// only pruning that is sound for product-type predicates without tracking
/// how far a degree can still grow.
pub fn search(
    g: &Graph,
    k: Label,
    predicate: Predicate,
    fixed: &[Option<Label>],
    budget: Budget,
) -> Result<SearchResult, BudgetExceeded> {
    assert_eq!(fixed.len(), g.m());
    let mut s = Search::new(g, k, predicate, fixed, budget.meter());
    let found = s.run()?;
    let outcome = if found {
        Outcome::Witness(EdgeLabelling::new(g, k, s.labels.clone()).expect("labels in range"))
    } else {
        Outcome::ExhaustedNone
    };
    Ok(SearchResult {
        k,
        predicate,
        outcome,
        nodes: s.meter.nodes(),
        elapsed: s.meter.elapsed(),
    })
}

/// Vertices in BFS order (component by component), then edges sorted so
/// that each vertex completes as early as possible.
fn bfs_edge_order(g: &Graph) -> Vec<EdgeId> {
    let mut pos = vec![usize::MAX; g.n()];
    let mut next = 0;
    for s in 0..g.n() {
        if pos[s] != usize::MAX {
            continue;
        }
        pos[s] = next;
        next += 1;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v) {
                if pos[u] == usize::MAX {
                    pos[u] = next;
                    next += 1;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut order: Vec<EdgeId> = (0..g.m()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edge(e);
        (pos[u].max(pos[v]), pos[u].min(pos[v]))
    });
    order
}

struct Search<'g> {
    g: &'g Graph,
    k: usize,
    predicate: Predicate,
    order: Vec<EdgeId>,
    labels: Vec<Label>,
    // per vertex label counts, n x k
    counts: Vec<u32>,
    remaining: Vec<usize>,
    // completion key per vertex, valid while remaining == 0
    keys: Vec<Vec<u32>>,
    // exponent table: exps[label][prime index]
    exps: Vec<Vec<u32>>,
    meter: Meter,
    // scratch for forest checks
    mark: Vec<usize>,
    stamp: usize,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, k: Label, predicate: Predicate, fixed: &[Option<Label>], meter: Meter) -> Self {
        let primes = primes_up_to(k);
        let exps = (0..=k as u32)
            .map(|label| {
                primes
                    .iter()
                    .map(|&p| {
                        let (mut x, mut e) = (label.max(1), 0);
                        while x % p == 0 {
                            x /= p;
                            e += 1;
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        let order: Vec<EdgeId> = bfs_edge_order(g)
            .into_iter()
            .filter(|&e| fixed[e].is_none())
            .collect();
        let mut s = Search {
            g,
            k: k as usize,
            predicate,
            order,
            labels: fixed.iter().map(|f| f.unwrap_or(0)).collect(),
            counts: vec![0; g.n() * k as usize],
            remaining: (0..g.n()).map(|v| g.degree(v)).collect(),
            keys: vec![Vec::new(); g.n()],
            exps,
            meter,
            mark: vec![0; g.n()],
            stamp: 0,
        };
        for (e, f) in fixed.iter().enumerate() {
            if let Some(l) = *f {
                let (u, v) = g.edge(e);
                for w in [u, v] {
                    s.counts[w * s.k + l as usize - 1] += 1;
                    s.remaining[w] -= 1;
                }
            }
        }
        s
    }

    fn run(&mut self) -> Result<bool, BudgetExceeded> {
        // vertices complete from the start are checked in id order
        let complete: Vec<Vertex> = (0..self.g.n()).filter(|&v| self.remaining[v] == 0).collect();
        // treat them as incomplete until each one's turn comes
        for r in self.remaining.iter_mut() {
            *r = (*r).max(1);
        }
        for v in complete {
            self.remaining[v] = 0;
            self.compute_key(v);
            if !self.accepts(v) {
                return Ok(false);
            }
        }
        self.extend(0)
    }

    fn compute_key(&mut self, v: Vertex) {
        let c = &self.counts[v * self.k..(v + 1) * self.k];
        let key = &mut self.keys[v];
        key.clear();
        match self.predicate {
            Predicate::MProper => key.extend_from_slice(c),
            Predicate::SProper => {
                key.push(c.iter().enumerate().map(|(i, &n)| (i as u32 + 1) * n).sum());
            }
            _ => {
                let width = self.exps[0].len();
                key.resize(width, 0);
                for (i, &n) in c.iter().enumerate() {
                    if n == 0 {
                        continue;
                    }
                    for (slot, &e) in key.iter_mut().zip(&self.exps[i + 1]) {
                        *slot += e * n;
                    }
                }
            }
        }
    }

    fn same_class(&self, u: Vertex, v: Vertex) -> bool {
        self.remaining[u] == 0 && self.remaining[v] == 0 && self.keys[u] == self.keys[v]
    }

    // Checks a vertex that has just completed against its complete neighbours.
    fn accepts(&mut self, v: Vertex) -> bool {
        let g = self.g;
        match self.predicate {
            Predicate::PProper | Predicate::MProper | Predicate::SProper => {
                g.neighbors(v).all(|u| !self.same_class(u, v))
            }
            Predicate::S1Matching => {
                let mut partners = g.neighbors(v).filter(|&u| self.same_class(u, v));
                let Some(u) = partners.next() else {
                    return true;
                };
                if partners.next().is_some() || self.keys[v].iter().any(|&e| e != 0) {
                    return false;
                }
                // u must have no other partner
                g.neighbors(u).filter(|&w| w != v && self.same_class(u, w)).count() == 0
            }
            Predicate::AllForests => {
                // a cycle through v exists iff two of its same-class
                // neighbours are already connected inside the class
                let partners: Vec<Vertex> =
                    g.neighbors(v).filter(|&u| self.same_class(u, v)).collect();
                if partners.len() < 2 {
                    return true;
                }
                self.stamp += 1;
                let stamp = self.stamp;
                for (i, &p) in partners.iter().enumerate() {
                    if self.mark[p] == stamp {
                        return false;
                    }
                    // flood p's class component, avoiding v
                    let mut stack = vec![p];
                    self.mark[p] = stamp;
                    while let Some(x) = stack.pop() {
                        for y in g.neighbors(x) {
                            if y != v && self.mark[y] != stamp && self.same_class(x, y) {
                                if partners[i + 1..].contains(&y) {
                                    return false;
                                }
                                self.mark[y] = stamp;
                                stack.push(y);
                            }
                        }
                    }
                }
                true
            }
        }
    }

    fn extend(&mut self, depth: usize) -> Result<bool, BudgetExceeded> {
        self.meter.tick()?;
        if depth == self.order.len() {
            return Ok(true);
        }
        let e = self.order[depth];
        let (u, v) = self.g.edge(e);
        for label in 1..=self.k as Label {
            let slot = label as usize - 1;
            self.labels[e] = label;
            self.counts[u * self.k + slot] += 1;
            self.counts[v * self.k + slot] += 1;
            self.remaining[u] -= 1;
            self.remaining[v] -= 1;
            // both ends may complete at once; keys first, then checks
            for w in [u, v] {
                if self.remaining[w] == 0 {
                    self.compute_key(w);
                }
            }
            let mut ok = true;
            for w in [u, v] {
                if ok && self.remaining[w] == 0 {
                    ok = self.accepts(w);
                }
            }
            if ok && self.extend(depth + 1)? {
                return Ok(true);
            }
            self.counts[u * self.k + slot] -= 1;
            self.counts[v * self.k + slot] -= 1;
            self.remaining[u] += 1;
            self.remaining[v] += 1;
        }
        self.labels[e] = 0;
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::is_p_proper;

    #[test]
    fn edge_order_is_a_permutation() {
        let g = Graph::petersen();
        let mut order = bfs_edge_order(&g);
        order.sort();
        assert_eq!(order, (0..g.m()).collect::<Vec<_>>());
    }

    #[test]
    fn fixed_edges_are_respected() {
        let c4 = Graph::cycle(4);
        // force edge (0,1) to 1 and (2,3) to 1; 2-labellings can then still
        // separate products via (0,3) and (1,2)
        let mut fixed = vec![None; 4];
        fixed[c4.edge_id(0, 1).unwrap()] = Some(1);
        let r = search(&c4, 2, Predicate::PProper, &fixed, Budget::UNLIMITED).unwrap();
        let w = r.witness().unwrap();
        assert_eq!(w.between(&c4, 0, 1), 1);
        assert!(is_p_proper(&c4, w));
    }

    #[test]
    fn fully_fixed_conflict_is_infeasible() {
        let k3 = Graph::complete(3);
        let fixed = vec![Some(1); 3];
        let r = search(&k3, 3, Predicate::PProper, &fixed, Budget::UNLIMITED).unwrap();
        assert_eq!(r.outcome, Outcome::ExhaustedNone);
    }

    #[test]
    fn edge_completing_both_ends() {
        // the last edge completes the centre and a leaf together
        let p3 = Graph::from_edges(3, [(1, 0), (1, 2)]).unwrap();
        let r = search(&p3, 2, Predicate::PProper, &[None, None], Budget::UNLIMITED).unwrap();
        assert!(is_p_proper(&p3, r.witness().unwrap()));
    }
}
