//! Exact optimum at desk scale and certified upper bounds on `f(OPT)`.

use crate::error::{Error, Result};
use crate::instance::{fits, Element, ElementId, Instance};
use crate::oracle::{Objective, Oracle, QueryLedger};
use crate::report::Solution;
use crate::trace::GreedyTrace;

/// Largest ground set [`brute_force_opt`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 22;

/// Exact maximizer of `f` over all feasible subsets.
///
/// Ties go to the lexicographically smallest sorted id list. Subsets that
/// exceed the capacity are pruned before evaluation, so an enforcing ledger
/// is fine here.
pub fn brute_force_opt(oracle: &Oracle<'_>) -> Result<Solution> {
    let instance = oracle.instance();
    let n = instance.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let elements = instance.elements_by_id();
    let mut search = Search {
        oracle,
        elements: &elements,
        capacity: instance.capacity(),
        current: Vec::with_capacity(n),
        best_ids: Vec::new(),
        best_value: oracle.evaluate(&[])?,
    };
    search.descend(0, 0.0)?;
    let Search {
        best_ids,
        best_value,
        ..
    } = search;
    Solution::new(instance, best_ids, best_value)
}

struct Search<'o, 'e> {
    oracle: &'o Oracle<'o>,
    elements: &'e [Element],
    capacity: f64,
    current: Vec<ElementId>,
    best_ids: Vec<ElementId>,
    best_value: f64,
}

impl Search<'_, '_> {
    // Visits subsets in lexicographic order of their sorted id lists, so the
    // first maximizer found is the lexicographically smallest one.
    fn descend(&mut self, start: usize, cost: f64) -> Result<()> {
        for k in start..self.elements.len() {
            let e = self.elements[k];
            let next_cost = cost + e.cost;
            if !fits(next_cost, self.capacity) {
                continue;
            }
            self.current.push(e.id);
            let value = self.oracle.evaluate(&self.current)?;
            if value > self.best_value {
                self.best_value = value;
                self.best_ids = self.current.clone();
            }
            self.descend(k + 1, next_cost)?;
            self.current.pop();
        }
        Ok(())
    }
}

/// Upper bound on `f(OPT)` from one greedy trace.
///
/// Returns the minimum of `f(all elements)` and, over every greedy prefix
/// `G_i`, of `f(G_i) + K · max_{e ∉ G_i} ρ(e|G_i)`. Both are valid bounds for
/// monotone submodular `f`. The evaluations include infeasible sets, so they
/// go through a private non-enforcing ledger; the number of queries spent is
/// returned alongside the bound.
pub fn upper_bound_opt(
    instance: &Instance,
    objective: &dyn Objective,
    trace: &GreedyTrace,
) -> Result<(f64, u64)> {
    let ledger = QueryLedger::permissive();
    let oracle = Oracle::new(instance, objective, &ledger);
    let capacity = instance.capacity();

    let all: Vec<ElementId> = instance.elements().iter().map(|e| e.id).collect();
    let mut bound = oracle.evaluate(&all)?;

    for (i, step) in trace.steps().iter().enumerate() {
        let prefix = trace.prefix(i);
        let mut best_density: f64 = 0.0;
        for e in instance.elements() {
            if prefix.contains(&e.id) {
                continue;
            }
            let gain = oracle.evaluate_with(prefix, e.id)? - step.value;
            best_density = best_density.max(gain / e.cost);
        }
        bound = bound.min(step.value + capacity * best_density);
    }
    Ok((bound, ledger.query_count()))
}
