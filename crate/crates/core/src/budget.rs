//! Work limits for exhaustive searches. Running out of budget is always
//! reported as an error, never as a mathematical answer.

use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_time: None,
    };

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }

    pub fn time(max_time: Duration) -> Budget {
        Budget {
            max_nodes: None,
            max_time: Some(max_time),
        }
    }

    pub(crate) fn meter(self) -> Meter {
        Meter {
            budget: self,
            start: Instant::now(),
            nodes: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget exhausted after {nodes} nodes in {elapsed:?}")]
pub struct BudgetExceeded {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
    nodes: u64,
}

impl Meter {
    /// Counts one search node.
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                return Err(self.exceeded());
            }
        }
        // checking the clock is comparatively slow
        if self.nodes & 0xfff == 0 {
            if let Some(max) = self.budget.max_time {
                if self.start.elapsed() > max {
                    return Err(self.exceeded());
                }
            }
        }
        Ok(())
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    fn exceeded(&self) -> BudgetExceeded {
        BudgetExceeded {
            nodes: self.nodes,
            elapsed: self.start.elapsed(),
        }
    }
}
