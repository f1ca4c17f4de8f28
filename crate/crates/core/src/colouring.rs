//! Exact vertex colouring at desk scale and the move-down normalization that
//! gives every vertex of part `i` a neighbour in each earlier part.

use std::time::Duration;

use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded, Meter};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_COLOURING_BUDGET: Budget = Budget {
    max_nodes: None,
    max_time: Some(Duration::from_secs(60)),
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("colouring is not proper: edge {0}-{1} joins one part")]
    Improper(Vertex, Vertex),
    #[error("parts do not partition the vertex set (vertex {0})")]
    NotAPartition(Vertex),
    #[error("vertex {vertex} in part {part} has no neighbour in part {missing}")]
    MissingWitness {
        vertex: Vertex,
        part: usize,
        missing: usize,
    },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Ordered proper colouring `(V_1, ..., V_k)` in which every vertex of a
/// part has at least one neighbour in each lower-indexed part. Parts are
/// indexed from 0 here, so `part(0)` is `V_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedColouring {
    parts: Vec<Vec<Vertex>>,
    part_of: Vec<usize>,
}

impl NormalizedColouring {
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[Vertex] {
        &self.parts[i]
    }

    /// Zero-based part index of `v`.
    pub fn part_of(&self, v: Vertex) -> usize {
        self.part_of[v]
    }

    /// Smallest-id neighbour of `v` inside part `i`.
    pub fn first_neighbour_in(&self, g: &Graph, v: Vertex, i: usize) -> Option<Vertex> {
        g.neighbors(v).find(|&u| self.part_of[u] == i)
    }

    /// Re-checks properness and the downward-witness property in O(nk + m).
    pub fn check(&self, g: &Graph) -> Result<(), ColouringError> {
        check_proper(g, &self.part_of)?;
        let k = self.parts.len();
        let mut seen = vec![false; k];
        for v in 0..g.n() {
            seen.iter_mut().for_each(|s| *s = false);
            for u in g.neighbors(v) {
                seen[self.part_of[u]] = true;
            }
            let p = self.part_of[v];
            if let Some(missing) = (0..p).find(|&j| !seen[j]) {
                return Err(ColouringError::MissingWitness {
                    vertex: v,
                    part: p,
                    missing,
                });
            }
        }
        Ok(())
    }
}

fn check_proper(g: &Graph, part_of: &[usize]) -> Result<(), ColouringError> {
    match g.edges().iter().find(|&&(u, v)| part_of[u] == part_of[v]) {
        Some(&(u, v)) => Err(ColouringError::Improper(u, v)),
        None => Ok(()),
    }
}

fn part_index(g: &Graph, parts: &[Vec<Vertex>]) -> Result<Vec<usize>, ColouringError> {
    let mut part_of = vec![usize::MAX; g.n()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= g.n() || part_of[v] != usize::MAX {
                return Err(ColouringError::NotAPartition(v));
            }
            part_of[v] = i;
        }
    }
    if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(ColouringError::NotAPartition(v));
    }
    Ok(part_of)
}

/// Moves vertices down until every vertex of part `i` sees every part
/// `j < i`. Passes scan vertices by ascending id and move each one to the
/// smallest part it has no neighbour in; the loop stops after a pass with no
/// move. Part indices only decrease, so this terminates, and the part count
/// never grows. Empty parts (necessarily trailing at the fixpoint) are
/// dropped.
pub fn normalize_colouring(
    g: &Graph,
    parts: &[Vec<Vertex>],
) -> Result<NormalizedColouring, ColouringError> {
    let mut part_of = part_index(g, parts)?;
    check_proper(g, &part_of)?;
    let k = parts.len();
    let mut seen = vec![false; k];
    loop {
        let mut moved = false;
        for v in 0..g.n() {
            let p = part_of[v];
            if p == 0 {
                continue;
            }
            seen[..p].iter_mut().for_each(|s| *s = false);
            for u in g.neighbors(v) {
                if part_of[u] < p {
                    seen[part_of[u]] = true;
                }
            }
            if let Some(j) = (0..p).find(|&j| !seen[j]) {
                part_of[v] = j;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    let mut out: Vec<Vec<Vertex>> = vec![Vec::new(); k];
    for v in 0..g.n() {
        out[part_of[v]].push(v);
    }
    while out.last().is_some_and(Vec::is_empty) {
        out.pop();
    }
    debug_assert!(out.iter().all(|p| !p.is_empty()));
    Ok(NormalizedColouring {
        parts: out,
        part_of,
    })
}

/// Exact chromatic number.
pub fn chromatic_number(g: &Graph, budget: Budget) -> Result<usize, ColouringError> {
    Ok(optimal_colouring(g, budget)?.len())
}

/// A proper colouring with exactly χ(G) nonempty parts.
pub fn optimal_colouring(g: &Graph, budget: Budget) -> Result<Vec<Vec<Vertex>>, ColouringError> {
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    if g.m() == 0 {
        return Ok(vec![(0..n).collect()]);
    }
    let mut best = dsatur_greedy(g);
    let upper = best.iter().copied().max().unwrap() + 1;
    let lower = greedy_clique_bound(g);
    let mut meter = budget.meter();
    // ascend from the clique bound; the first success is optimal
    for k in lower..upper {
        let mut search = ColourSearch::new(g, k);
        if search.run(&mut meter)? {
            best = search.colour.iter().map(|c| c.unwrap()).collect();
            break;
        }
    }
    let k = best.iter().copied().max().unwrap() + 1;
    let mut parts = vec![Vec::new(); k];
    for v in 0..n {
        parts[best[v]].push(v);
    }
    Ok(parts)
}

fn greedy_clique_bound(g: &Graph) -> usize {
    let mut best = 1;
    for v in 0..g.n() {
        let mut cand: Vec<Vertex> = g.neighbors(v).collect();
        cand.sort_by_key(|&u| std::cmp::Reverse(g.degree(u)));
        let mut clique = vec![v];
        for u in cand {
            if clique.iter().all(|&w| g.has_edge(u, w)) {
                clique.push(u);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colour: Vec<Option<usize>> = vec![None; n];
    // a vertex never needs a colour above its degree
    let mut used: Vec<Vec<bool>> = (0..n).map(|v| vec![false; g.degree(v) + 1]).collect();
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v].is_none())
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..=g.degree(v)).find(|&c| !used[v][c]).unwrap();
        colour[v] = Some(c);
        for u in g.neighbors(v) {
            if c < used[u].len() && !used[u][c] {
                used[u][c] = true;
                sat[u] += 1;
            }
        }
    }
    colour.into_iter().map(Option::unwrap).collect()
}

// Backtracking k-colourability with DSATUR vertex choice and colour-symmetry
// breaking (a fresh colour is only ever the next unused one).
struct ColourSearch<'g> {
    g: &'g Graph,
    k: usize,
    colour: Vec<Option<usize>>,
    // neighbour colour counts, n x k
    count: Vec<u32>,
    sat: Vec<usize>,
}

impl<'g> ColourSearch<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        ColourSearch {
            g,
            k,
            colour: vec![None; g.n()],
            count: vec![0; g.n() * k],
            sat: vec![0; g.n()],
        }
    }

    fn run(&mut self, meter: &mut Meter) -> Result<bool, BudgetExceeded> {
        self.extend(0, 0, meter)
    }

    fn assign(&mut self, v: Vertex, c: usize, delta: i32) {
        for u in self.g.neighbors(v) {
            let slot = &mut self.count[u * self.k + c];
            if delta > 0 {
                *slot += 1;
                if *slot == 1 {
                    self.sat[u] += 1;
                }
            } else {
                *slot -= 1;
                if *slot == 0 {
                    self.sat[u] -= 1;
                }
            }
        }
    }

    fn extend(&mut self, coloured: usize, used: usize, meter: &mut Meter) -> Result<bool, BudgetExceeded> {
        meter.tick()?;
        let n = self.g.n();
        if coloured == n {
            return Ok(true);
        }
        let v = (0..n)
            .filter(|&v| self.colour[v].is_none())
            .max_by_key(|&v| (self.sat[v], self.g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        if self.sat[v] >= self.k {
            return Ok(false);
        }
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.count[v * self.k + c] != 0 {
                continue;
            }
            self.colour[v] = Some(c);
            self.assign(v, c, 1);
            let found = self.extend(coloured + 1, used.max(c + 1), meter)?;
            if found {
                return Ok(true);
            }
            self.assign(v, c, -1);
            self.colour[v] = None;
        }
        Ok(false)
    }
}
