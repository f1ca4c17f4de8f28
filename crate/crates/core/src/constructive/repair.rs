use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{ConstructionError, Stage, Work};
use crate::budget::{Budget, BudgetExceeded};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::labelling::{check_shape, EdgeLabelling, Label, Requirement, ShapeReport};
use crate::oracle::{search, Predicate};

/// Shared by the greedy pass (one node per evaluated move) and each
/// restricted search.
pub const DEFAULT_REPAIR_BUDGET: Budget = Budget {
    max_nodes: Some(5_000_000),
    max_time: None,
};

/// The repair pass gave up; `report` describes the best labelling reached.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct RepairFailure {
    pub requirement: Requirement,
    pub labelling: EdgeLabelling,
    pub report: ShapeReport,
    pub budget: Option<BudgetExceeded>,
}

impl fmt::Display for RepairFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "repair for {} failed with {} violating class edge(s)",
            self.requirement,
            self.report.score()
        )?;
        if let Some(b) = &self.budget {
            write!(f, " ({b})")?;
        }
        Ok(())
    }
}

/// Returns `l` unchanged if it already meets `requirement`. Otherwise tries
/// single-edge relabellings near the violations while they lower the
/// number of violating class edges, then exhaustive search over the edges
/// around the violations (radius 1, then 2, then everything) with all other
/// labels fixed.
pub fn repair_conflicts(
    g: &Graph,
    l: &EdgeLabelling,
    requirement: Requirement,
    budget: Budget,
) -> Result<EdgeLabelling, Box<RepairFailure>> {
    let mut labels = l.labels().to_vec();
    let mut changes = Vec::new();
    repair_labels(g, l.k(), &mut labels, requirement, budget, &mut changes)?;
    Ok(EdgeLabelling::new(g, l.k(), labels).expect("labels in range"))
}

pub(crate) fn repair_in_place(
    w: &mut Work,
    requirement: Requirement,
    budget: Budget,
) -> Result<(), ConstructionError> {
    let mut labels = w.labels.clone();
    let mut changes = Vec::new();
    repair_labels(w.g, w.k, &mut labels, requirement, budget, &mut changes)?;
    for e in changes {
        if w.label(e) != labels[e] {
            w.set(e, labels[e], Stage::Repair, "repair");
        }
    }
    Ok(())
}

fn violating_vertices(report: &ShapeReport) -> BTreeSet<Vertex> {
    report
        .violating
        .iter()
        .flat_map(|&i| report.classes[i].edges.iter().flat_map(|&(u, v)| [u, v]))
        .collect()
}

/// Edges with an end within distance `radius` of `centre`.
fn edges_near(g: &Graph, centre: &BTreeSet<Vertex>, radius: usize) -> Vec<EdgeId> {
    let mut ball = centre.clone();
    let mut frontier: Vec<Vertex> = centre.iter().copied().collect();
    for _ in 0..radius {
        let mut next = Vec::new();
        for &v in &frontier {
            for u in g.neighbors(v) {
                if ball.insert(u) {
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    let mut edges: Vec<EdgeId> = ball
        .iter()
        .flat_map(|&v| g.incident(v).iter().map(|&(_, e)| e))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

fn repair_labels(
    g: &Graph,
    k: Label,
    labels: &mut [Label],
    requirement: Requirement,
    budget: Budget,
    changes: &mut Vec<EdgeId>,
) -> Result<(), Box<RepairFailure>> {
    let eval = |labels: &[Label]| {
        let l = EdgeLabelling::new(g, k, labels.to_vec()).expect("labels in range");
        check_shape(g, &l, requirement)
    };
    let fail = |labels: &[Label], report: ShapeReport, budget: Option<BudgetExceeded>| {
        Box::new(RepairFailure {
            requirement,
            labelling: EdgeLabelling::new(g, k, labels.to_vec()).expect("labels in range"),
            report,
            budget,
        })
    };
    let mut report = eval(labels);
    if report.conforms() {
        return Ok(());
    }
    let mut meter = budget.meter();

    // greedy single-edge moves, first improvement
    'improve: loop {
        let score = report.score();
        let near = edges_near(g, &violating_vertices(&report), 1);
        for e in near {
            let old = labels[e];
            for alt in (1..=k).filter(|&a| a != old) {
                if let Err(b) = meter.tick() {
                    return Err(fail(labels, report, Some(b)));
                }
                labels[e] = alt;
                let candidate = eval(labels);
                if candidate.score() < score {
                    changes.push(e);
                    report = candidate;
                    if report.conforms() {
                        return Ok(());
                    }
                    continue 'improve;
                }
            }
            labels[e] = old;
        }
        break;
    }

    // restricted exhaustive search
    let predicate = match requirement {
        Requirement::OneEdge | Requirement::OneStar => {
            return Err(fail(labels, report, None));
        }
        r => Predicate::from(r),
    };
    let centre = violating_vertices(&report);
    for radius in [1, 2, usize::MAX] {
        let free = if radius == usize::MAX {
            (0..g.m()).collect()
        } else {
            edges_near(g, &centre, radius)
        };
        let mut fixed: Vec<Option<Label>> = labels.iter().map(|&l| Some(l)).collect();
        for &e in &free {
            fixed[e] = None;
        }
        let result = match search(g, k, predicate, &fixed, budget) {
            Ok(r) => r,
            Err(b) => return Err(fail(labels, report, Some(b))),
        };
        if let Some(w) = result.witness() {
            for &e in &free {
                if labels[e] != w.label(e) {
                    labels[e] = w.label(e);
                    changes.push(e);
                }
            }
            return Ok(());
        }
    }
    Err(fail(labels, report, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conforming_input_is_unchanged() {
        let g = Graph::complete(3);
        let l = EdgeLabelling::new(&g, 3, vec![1, 2, 3]).unwrap();
        let out = repair_conflicts(&g, &l, Requirement::AllIndependent, Budget::nodes(0)).unwrap();
        assert_eq!(out, l);
    }

    #[test]
    fn triangle_all_ones_to_forests() {
        let g = Graph::complete(3);
        let l = EdgeLabelling::constant(&g, 2, 1);
        let out = repair_conflicts(&g, &l, Requirement::AllForests, DEFAULT_REPAIR_BUDGET).unwrap();
        assert!(check_shape(&g, &out, Requirement::AllForests).conforms());
    }

    #[test]
    fn zero_budget_reports_failure() {
        let g = Graph::complete(3);
        let l = EdgeLabelling::constant(&g, 2, 1);
        let err = repair_conflicts(&g, &l, Requirement::AllForests, Budget::nodes(0)).unwrap_err();
        assert!(!err.report.conforms());
        assert!(err.budget.is_some());
    }

    #[test]
    fn search_stage_reaches_p_proper() {
        let g = Graph::petersen();
        let l = EdgeLabelling::constant(&g, 3, 1);
        let out = repair_conflicts(&g, &l, Requirement::AllIndependent, DEFAULT_REPAIR_BUDGET).unwrap();
        assert!(check_shape(&g, &out, Requirement::AllIndependent).conforms());
    }
}
