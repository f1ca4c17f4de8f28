//! Exhaustive ground truth for small graphs: existence of labellings with a
//! given property, the least label count achieving it, and the desk-scale
//! checks built on top of those searches.

mod search;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::graph::Graph;
use crate::labelling::{
    check_shape, is_m_proper, is_p_proper, is_s_proper, EdgeLabelling, Label, Requirement,
};

pub use search::search;

pub const DEFAULT_ORACLE_BUDGET: Budget = Budget {
    max_nodes: Some(100_000_000),
    max_time: Some(Duration::from_secs(120)),
};

/// Largest label count the minimisation loops will try.
pub const MAX_ORACLE_K: Label = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("anomaly: {0}")]
    Anomaly(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    PProper,
    MProper,
    SProper,
    AllForests,
    S1Matching,
}

impl Predicate {
    /// Evaluates the predicate with the labelling module's checkers.
    pub fn holds(self, g: &Graph, l: &EdgeLabelling) -> bool {
        match self {
            Predicate::PProper => is_p_proper(g, l),
            Predicate::MProper => is_m_proper(g, l),
            Predicate::SProper => is_s_proper(g, l),
            Predicate::AllForests => check_shape(g, l, Requirement::AllForests).conforms(),
            Predicate::S1Matching => check_shape(g, l, Requirement::S1Matching).conforms(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::PProper => "p-proper",
            Predicate::MProper => "m-proper",
            Predicate::SProper => "s-proper",
            Predicate::AllForests => "forests",
            Predicate::S1Matching => "s1-matching",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Predicate::PProper,
            Predicate::MProper,
            Predicate::SProper,
            Predicate::AllForests,
            Predicate::S1Matching,
        ]
        .into_iter()
        .find(|p| p.name() == s)
        .ok_or_else(|| format!("unknown predicate {s:?}"))
    }
}

impl From<Requirement> for Predicate {
    fn from(r: Requirement) -> Self {
        match r {
            Requirement::AllIndependent => Predicate::PProper,
            Requirement::S1Matching => Predicate::S1Matching,
            Requirement::AllForests => Predicate::AllForests,
            Requirement::OneEdge | Requirement::OneStar => {
                panic!("{r} has no exhaustive-search predicate")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Witness(EdgeLabelling),
    ExhaustedNone,
    /// Some component is a lone edge, so no distinguishing labelling exists.
    UndefinedNotNice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub k: Label,
    pub predicate: Predicate,
    pub outcome: Outcome,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn witness(&self) -> Option<&EdgeLabelling> {
        match &self.outcome {
            Outcome::Witness(l) => Some(l),
            _ => None,
        }
    }
}

/// Searches for a `k`-labelling satisfying `predicate`. A returned witness
/// has been re-checked by [`Predicate::holds`].
pub fn find_k_labelling(
    g: &Graph,
    k: Label,
    predicate: Predicate,
    budget: Budget,
) -> Result<SearchResult, OracleError> {
    if k == 0 {
        return Err(OracleError::Precondition("k must be at least 1".into()));
    }
    let distinguishing = matches!(
        predicate,
        Predicate::PProper | Predicate::MProper | Predicate::SProper
    );
    if distinguishing && !g.is_nice() {
        return Ok(SearchResult {
            k,
            predicate,
            outcome: Outcome::UndefinedNotNice,
            nodes: 0,
            elapsed: Duration::ZERO,
        });
    }
    let fixed = vec![None; g.m()];
    let result = search(g, k, predicate, &fixed, budget)?;
    if let Some(w) = result.witness() {
        if !predicate.holds(g, w) {
            return Err(OracleError::Anomaly(format!(
                "search witness fails the {predicate} checker: {:?}",
                w.labels()
            )));
        }
    }
    Ok(result)
}

/// Least `k` with a witness; `value` is `None` iff the graph is not nice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiResult {
    pub predicate: Predicate,
    pub value: Option<Label>,
    pub witness: Option<EdgeLabelling>,
    /// Exhaustive run at `value - 1` proving minimality (absent for `k = 1`).
    pub lower_certificate: Option<SearchResult>,
    pub nodes: u64,
}

fn chi(g: &Graph, predicate: Predicate, budget: Budget) -> Result<ChiResult, OracleError> {
    let mut total = 0;
    let mut previous: Option<SearchResult> = None;
    for k in 1..=MAX_ORACLE_K {
        let r = find_k_labelling(g, k, predicate, budget)?;
        total += r.nodes;
        match r.outcome {
            Outcome::UndefinedNotNice => {
                return Ok(ChiResult {
                    predicate,
                    value: None,
                    witness: None,
                    lower_certificate: None,
                    nodes: total,
                })
            }
            Outcome::Witness(ref w) => {
                return Ok(ChiResult {
                    predicate,
                    value: Some(k),
                    witness: Some(w.clone()),
                    lower_certificate: previous,
                    nodes: total,
                })
            }
            Outcome::ExhaustedNone => previous = Some(r),
        }
    }
    Err(OracleError::Anomaly(format!(
        "no {predicate} labelling with at most {MAX_ORACLE_K} labels"
    )))
}

pub fn chi_p(g: &Graph, budget: Budget) -> Result<ChiResult, OracleError> {
    chi(g, Predicate::PProper, budget)
}

pub fn chi_m(g: &Graph, budget: Budget) -> Result<ChiResult, OracleError> {
    chi(g, Predicate::MProper, budget)
}

pub fn chi_s(g: &Graph, budget: Budget) -> Result<ChiResult, OracleError> {
    chi(g, Predicate::SProper, budget)
}

/// 2-labelling in which every class induces a forest, or exhaustion (which
/// would refute the forest conjecture for `g`).
pub fn forest_two_labelling(g: &Graph, budget: Budget) -> Result<SearchResult, OracleError> {
    find_k_labelling(g, 2, Predicate::AllForests, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularObservation {
    pub witness: EdgeLabelling,
    /// The m-proper witness is also p-proper.
    pub p_proper: bool,
}

/// For a nice regular graph, finds an m-proper 3-labelling and reports
/// whether it is p-proper (equal degree plus equal 2- and 3-degrees forces
/// equal multisets, so it always should be).
pub fn verify_regular_via_multiset(
    g: &Graph,
    budget: Budget,
) -> Result<RegularObservation, OracleError> {
    if !g.is_regular() {
        return Err(OracleError::Precondition("graph is not regular".into()));
    }
    if !g.is_nice() {
        return Err(OracleError::Precondition("graph has a K_2 component".into()));
    }
    let r = find_k_labelling(g, 3, Predicate::MProper, budget)?;
    match r.outcome {
        Outcome::Witness(witness) => Ok(RegularObservation {
            p_proper: is_p_proper(g, &witness),
            witness,
        }),
        _ => Err(OracleError::Anomaly(
            "nice graph without an m-proper 3-labelling".into(),
        )),
    }
}
