//! Performance curves of greedy and thresholding runs.
//!
//! A run that adds items `a_1, a_2, ...` one at a time defines the piecewise
//! linear curve through the points `(c(G_i), f(G_i))`, where `G_i` holds the
//! first `i` items. On `[c(G_{i-1}), c(G_i))` the slope is the marginal density
//! of `a_i` with respect to `G_{i-1}`. For greedy runs this is the curve `g`,
//! for thresholding runs the curve `t`.
//!
//! After rescaling values by `f(OPT)` and costs by a capacity scale, these
//! curves satisfy the lower bounds checked by [`GreedyTrace::standard_inequality`]
//! and [`GreedyTrace::augmentation_inequality`].

use serde::Serialize;

use crate::error::Result;
use crate::instance::{Element, ElementId, Instance};
use crate::oracle::Oracle;
use crate::report::Solution;

/// One breakpoint of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceStep {
    /// `c(G_i)`.
    pub cum_cost: f64,
    /// `f(G_i)`.
    pub value: f64,
    /// Density of the next item w.r.t. `G_i`; zero after the last item.
    pub next_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyTrace {
    steps: Vec<TraceStep>,
    order: Vec<ElementId>,
}

impl GreedyTrace {
    /// Trace of the empty prefix with value `f(∅)`.
    pub fn new(empty_value: f64) -> Self {
        Self {
            steps: vec![TraceStep {
                cum_cost: 0.0,
                value: empty_value,
                next_density: 0.0,
            }],
            order: Vec::new(),
        }
    }

    /// Appends item `id` of cost `cost` taken with density `density`, after
    /// which the prefix value is `value`.
    pub fn push(&mut self, id: ElementId, cost: f64, density: f64, value: f64) {
        let last = self.steps.last_mut().expect("trace always has the empty prefix");
        last.next_density = density.max(0.0);
        let cum_cost = last.cum_cost + cost;
        self.steps.push(TraceStep {
            cum_cost,
            value,
            next_density: 0.0,
        });
        self.order.push(id);
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    /// Items in the order they were taken.
    pub fn order(&self) -> &[ElementId] {
        &self.order
    }

    /// The first `i` items.
    pub fn prefix(&self, i: usize) -> &[ElementId] {
        &self.order[..i]
    }

    /// Number of items taken.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn final_value(&self) -> f64 {
        self.steps.last().map(|s| s.value).unwrap_or(0.0)
    }

    pub fn final_cost(&self) -> f64 {
        self.steps.last().map(|s| s.cum_cost).unwrap_or(0.0)
    }

    /// Index of the segment containing `x`: the smallest `i` with
    /// `c(G_i) > x`, minus one. `None` past the last breakpoint.
    fn segment(&self, x: f64) -> Option<usize> {
        let i = self.steps.partition_point(|s| s.cum_cost <= x);
        (i < self.steps.len()).then(|| i - 1)
    }

    /// The curve at `x`. Constant at `f(G)` past the total cost.
    pub fn performance(&self, x: f64) -> f64 {
        match self.segment(x) {
            Some(i) => {
                let s = &self.steps[i];
                s.value + (x - s.cum_cost) * s.next_density
            }
            None => self.final_value(),
        }
    }

    /// Right derivative of the curve at `x`.
    pub fn right_derivative(&self, x: f64) -> f64 {
        self.segment(x)
            .map(|i| self.steps[i].next_density)
            .unwrap_or(0.0)
    }

    /// Rescales values by `1/value_scale` and costs by `1/cost_scale`.
    pub fn normalized(&self, value_scale: f64, cost_scale: f64) -> GreedyTrace {
        let steps = self
            .steps
            .iter()
            .map(|s| TraceStep {
                cum_cost: s.cum_cost / cost_scale,
                value: s.value / value_scale,
                next_density: s.next_density * cost_scale / value_scale,
            })
            .collect();
        GreedyTrace {
            steps,
            order: self.order.clone(),
        }
    }

    /// For a budget `limit`, finds the item whose addition first pushes the
    /// prefix cost above `limit`. Returns `(i, c_star)` where `G_i` is the
    /// last prefix within the limit and `c(G_i) = limit - c_star`.
    /// `None` if the whole run stays within `limit`.
    pub fn crossing(&self, limit: f64) -> Option<(usize, f64)> {
        let j = self.steps.iter().position(|s| s.cum_cost > limit)?;
        let i = j - 1;
        Some((i, limit - self.steps[i].cum_cost))
    }

    /// Checks `t(x) ≥ 1 − exp(−x/(1+ε))` at every breakpoint `x ≤ 1 − c(o₁)`
    /// of the normalized curve. `epsilon = 0` gives the greedy bound
    /// `g(x) ≥ 1 − exp(−x)`.
    pub fn standard_inequality(
        &self,
        opt: &OptimumReference,
        cost_scale: f64,
        epsilon: f64,
    ) -> InequalityCheck {
        let norm = self.normalized(opt.value, cost_scale);
        let limit = 1.0 - opt.largest.cost / cost_scale;
        let mut check = InequalityCheck::default();
        for s in norm.steps.iter().filter(|s| s.cum_cost <= limit) {
            let bound = 1.0 - (-s.cum_cost / (1.0 + epsilon)).exp();
            check.record(s.value - bound);
        }
        check
    }

    /// Checks `g₁(x) + (1+ε)(1 − c(o₁)) g'(x) ≥ 1` at breakpoints
    /// `x ≤ 1 − c(o₁) − c*`, where `g₁(x) = f(G_i ∪ o₁)` normalized.
    ///
    /// The `f(G_i ∪ o₁)` values are fetched through `oracle`; those sets are
    /// feasible whenever `x` is in range.
    pub fn augmentation_inequality(
        &self,
        opt: &OptimumReference,
        cost_scale: f64,
        epsilon: f64,
        oracle: &Oracle<'_>,
    ) -> Result<InequalityCheck> {
        let norm = self.normalized(opt.value, cost_scale);
        let o1 = opt.largest;
        let slack_factor = (1.0 + epsilon) * (1.0 - o1.cost / cost_scale);
        let limit = 1.0 - o1.cost / cost_scale;
        let last = match norm.crossing(limit) {
            Some((i, _c_star)) => i,
            None => norm.len(),
        };
        let mut check = InequalityCheck::default();
        for i in 0..=last {
            let prefix = self.prefix(i);
            let with_o1 = if prefix.contains(&o1.id) {
                self.steps[i].value
            } else {
                oracle.evaluate_with(prefix, o1.id)?
            };
            let g1 = with_o1 / opt.value;
            let lhs = g1 + slack_factor * norm.steps[i].next_density;
            check.record(lhs - 1.0);
        }
        Ok(check)
    }
}

/// What the trace checks need to know about an optimal solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumReference {
    pub value: f64,
    pub cost: f64,
    /// `o₁`, the costliest item of the optimum (smallest id on ties).
    pub largest: Element,
}

impl OptimumReference {
    /// `None` for an empty optimum or one of value zero.
    pub fn from_solution(instance: &Instance, opt: &Solution) -> Option<Self> {
        if opt.value <= 0.0 {
            return None;
        }
        let mut largest: Option<Element> = None;
        for &id in &opt.ids {
            let e = instance.element(id)?;
            if largest.is_none_or(|l| e.cost > l.cost) {
                largest = Some(e);
            }
        }
        Some(Self {
            value: opt.value,
            cost: opt.cost,
            largest: largest?,
        })
    }
}

/// Minimum slack of an inequality over the checked breakpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub checked: usize,
    pub min_slack: f64,
}

impl Default for InequalityCheck {
    fn default() -> Self {
        Self {
            checked: 0,
            min_slack: f64::INFINITY,
        }
    }
}

impl InequalityCheck {
    fn record(&mut self, slack: f64) {
        self.checked += 1;
        self.min_slack = self.min_slack.min(slack);
    }

    pub fn holds(&self, tolerance: f64) -> bool {
        self.min_slack >= -tolerance
    }
}
