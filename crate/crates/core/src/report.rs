use std::time::Duration;

use serde::Serialize;

use crate::error::Result;
use crate::instance::{ElementId, Instance};
use crate::trace::GreedyTrace;

/// A feasible set together with its value and cost.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    /// Sorted ids, base set excluded.
    pub ids: Vec<ElementId>,
    pub value: f64,
    pub cost: f64,
}

impl Solution {
    pub fn new(instance: &Instance, mut ids: Vec<ElementId>, value: f64) -> Result<Self> {
        ids.sort_unstable();
        ids.dedup();
        let cost = instance.set_cost(&ids)?;
        Ok(Self { ids, value, cost })
    }

    /// Solution made of the base set alone.
    pub fn empty(value: f64) -> Self {
        Self {
            ids: Vec::new(),
            value,
            cost: 0.0,
        }
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }
}

/// Output and resource accounting of one algorithm run.
#[derive(Debug, Clone, Serialize)]
pub struct AlgoReport {
    pub algorithm: String,
    pub solution: Solution,
    /// Ledger delta over the run.
    pub queries: u64,
    pub passes: u32,
    pub rounds: u32,
    /// Largest number of elements the central machine received in one round.
    pub max_central_receipts: u64,
    /// Most elements held at once (streaming and distributed runs).
    pub peak_retained: usize,
    #[serde(skip)]
    pub wall_time: Duration,
    #[serde(skip)]
    pub trace: Option<GreedyTrace>,
}

impl AlgoReport {
    pub fn new(algorithm: impl Into<String>, solution: Solution) -> Self {
        Self {
            algorithm: algorithm.into(),
            solution,
            queries: 0,
            passes: 0,
            rounds: 0,
            max_central_receipts: 0,
            peak_retained: 0,
            wall_time: Duration::ZERO,
            trace: None,
        }
    }

    pub fn value(&self) -> f64 {
        self.solution.value
    }
}
