//! Value-oracle access with query accounting.
//!
//! Algorithms never call an [`Objective`] directly. They go through an
//! [`Oracle`], which appends the instance's base set, checks the knapsack
//! constraint of the queried set and counts the query on a [`QueryLedger`].

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::instance::{fits, ElementId, Instance};

/// A set function `f: 2^U -> R`.
///
/// `set` holds distinct ids in no particular order. Implementations must be
/// deterministic and safe to call from several threads at once.
pub trait Objective: Send + Sync {
    fn value(&self, set: &[ElementId]) -> f64;
}

impl<T: Objective + ?Sized> Objective for &T {
    fn value(&self, set: &[ElementId]) -> f64 {
        (**self).value(set)
    }
}

/// Thread-safe query counter.
///
/// With `enforce_feasible` set, a query on a set heavier than the capacity is
/// an error and is not counted. Without it, such queries are evaluated and
/// tallied separately in `infeasible_query_count`.
#[derive(Debug)]
pub struct QueryLedger {
    queries: AtomicU64,
    infeasible: AtomicU64,
    enforce_feasible: bool,
    budget: Option<u64>,
}

impl QueryLedger {
    pub fn new(enforce_feasible: bool) -> Self {
        Self {
            queries: AtomicU64::new(0),
            infeasible: AtomicU64::new(0),
            enforce_feasible,
            budget: None,
        }
    }

    /// Ledger used by the algorithms: infeasible queries are rejected.
    pub fn enforcing() -> Self {
        Self::new(true)
    }

    /// Ledger for analysis code (upper bounds, brute force checks).
    pub fn permissive() -> Self {
        Self::new(false)
    }

    /// Caps the number of queries; the query that would exceed the cap fails
    /// with [`Error::BudgetExceeded`].
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::SeqCst)
    }

    pub fn infeasible_query_count(&self) -> u64 {
        self.infeasible.load(Ordering::SeqCst)
    }

    pub fn enforce_feasible(&self) -> bool {
        self.enforce_feasible
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    fn record(&self, feasible: bool, cost: f64, capacity: f64) -> Result<()> {
        if !feasible && self.enforce_feasible {
            return Err(Error::InfeasibleQuery { cost, capacity });
        }
        match self.budget {
            None => {
                self.queries.fetch_add(1, Ordering::SeqCst);
            }
            Some(budget) => {
                self.queries
                    .fetch_update(Ordering::SeqCst, Ordering::SeqCst, |q| {
                        (q < budget).then_some(q + 1)
                    })
                    .map_err(|_| Error::BudgetExceeded { budget })?;
            }
        }
        if !feasible {
            self.infeasible.fetch_add(1, Ordering::SeqCst);
        }
        Ok(())
    }
}

impl Default for QueryLedger {
    fn default() -> Self {
        Self::enforcing()
    }
}

/// An objective bound to an instance and a ledger.
#[derive(Clone, Copy)]
pub struct Oracle<'a> {
    instance: &'a Instance,
    objective: &'a dyn Objective,
    ledger: &'a QueryLedger,
}

impl<'a> Oracle<'a> {
    pub fn new(instance: &'a Instance, objective: &'a dyn Objective, ledger: &'a QueryLedger) -> Self {
        Self {
            instance,
            objective,
            ledger,
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn objective(&self) -> &'a dyn Objective {
        self.objective
    }

    pub fn ledger(&self) -> &'a QueryLedger {
        self.ledger
    }

    pub fn capacity(&self) -> f64 {
        self.instance.capacity()
    }

    /// `f(ids ∪ base_set)`, counted as one query.
    pub fn evaluate(&self, ids: &[ElementId]) -> Result<f64> {
        let cost = self.instance.set_cost(ids)?;
        let capacity = self.instance.capacity();
        self.ledger.record(fits(cost, capacity), cost, capacity)?;

        let base = self.instance.base_set();
        if base.is_empty() {
            return Ok(self.objective.value(ids));
        }
        let mut full = Vec::with_capacity(ids.len() + base.len());
        full.extend(ids.iter().copied().filter(|&id| !self.instance.is_base(id)));
        full.extend_from_slice(base);
        Ok(self.objective.value(&full))
    }

    /// `f(set ∪ {e} ∪ base_set)`, counted as one query.
    pub fn evaluate_with(&self, set: &[ElementId], e: ElementId) -> Result<f64> {
        let mut ids = Vec::with_capacity(set.len() + 1);
        ids.extend_from_slice(set);
        ids.push(e);
        self.evaluate(&ids)
    }

    /// `Δ(e|set) = f(set ∪ e) − f(set)`.
    ///
    /// With `cached_set_value = Some(f(set))` this costs exactly one query,
    /// otherwise two.
    pub fn marginal_gain(
        &self,
        e: ElementId,
        set: &[ElementId],
        cached_set_value: Option<f64>,
    ) -> Result<f64> {
        let base = match cached_set_value {
            Some(v) => v,
            None => self.evaluate(set)?,
        };
        Ok(self.evaluate_with(set, e)? - base)
    }

    /// `ρ(e|set) = Δ(e|set) / c(e)`.
    pub fn marginal_density(
        &self,
        e: ElementId,
        set: &[ElementId],
        cached_set_value: Option<f64>,
    ) -> Result<f64> {
        let cost = self
            .instance
            .cost_of(e)
            .ok_or(Error::UnknownElement(e))?;
        let gain = self.marginal_gain(e, set, cached_set_value)?;
        // base-set members cost nothing and never add value
        if cost == 0.0 {
            return Ok(0.0);
        }
        Ok(gain / cost)
    }
}
