//! Ground set and knapsack model.
//!
//! Every algorithm in the crate works on a normalized [`Instance`]: the
//! smallest positive cost is 1, zero-cost items live in the base set (they
//! are part of every evaluated set), and every remaining element fits into
//! the knapsack on its own. Under these conditions a feasible set never has
//! more than `k_tilde = min(n, floor(K))` elements.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stable identifier of a ground-set item.
pub type ElementId = u32;

/// Relative slack used by every knapsack comparison, so that sums accumulated
/// in a different order agree on feasibility.
pub const COST_SLACK: f64 = 1e-9;

/// Whether a set of total cost `cost` fits into a knapsack of size `capacity`.
#[inline]
pub fn fits(cost: f64, capacity: f64) -> bool {
    cost <= capacity + COST_SLACK * capacity.max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub id: ElementId,
    pub cost: f64,
}

impl Element {
    pub fn new(id: ElementId, cost: f64) -> Self {
        Self { id, cost }
    }
}

/// A normalized knapsack instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    elements: Vec<Element>,
    capacity: f64,
    k_tilde: usize,
    base_set: Vec<ElementId>,
    cost_index: HashMap<ElementId, f64>,
}

/// Normalizes raw items against capacity `capacity`.
///
/// Zero-cost items move into the base set, remaining costs and the capacity
/// are divided by the minimum positive cost, and items that no longer fit are
/// dropped. An instance where nothing survives is still returned; use
/// [`Instance::check_nonempty`] to reject it.
pub fn normalize(raw: Vec<Element>, capacity: f64) -> Result<Instance> {
    normalize_with_base(raw, capacity, Vec::new())
}

fn normalize_with_base(
    raw: Vec<Element>,
    capacity: f64,
    mut base_set: Vec<ElementId>,
) -> Result<Instance> {
    if !(capacity.is_finite() && capacity > 0.0) {
        return Err(Error::InvalidCapacity(capacity));
    }
    let mut seen: HashSet<ElementId> = base_set.iter().copied().collect();
    for e in &raw {
        if !(e.cost.is_finite() && e.cost >= 0.0) {
            return Err(Error::InvalidCost {
                id: e.id,
                cost: e.cost,
            });
        }
        if !seen.insert(e.id) {
            return Err(Error::DuplicateId(e.id));
        }
    }

    let min_positive = raw
        .iter()
        .map(|e| e.cost)
        .filter(|&c| c > 0.0)
        .fold(f64::INFINITY, f64::min);
    let scale = if min_positive.is_finite() {
        min_positive
    } else {
        1.0
    };
    let capacity = capacity / scale;

    let mut elements = Vec::with_capacity(raw.len());
    for e in raw {
        if e.cost == 0.0 {
            base_set.push(e.id);
            continue;
        }
        let cost = e.cost / scale;
        if fits(cost, capacity) {
            elements.push(Element::new(e.id, cost));
        }
    }
    base_set.sort_unstable();

    Ok(Instance::assemble(elements, capacity, base_set))
}

impl Instance {
    fn assemble(elements: Vec<Element>, capacity: f64, base_set: Vec<ElementId>) -> Self {
        let k_tilde = elements.len().min(capacity.floor() as usize);
        let cost_index = elements.iter().map(|e| (e.id, e.cost)).collect();
        Self {
            elements,
            capacity,
            k_tilde,
            base_set,
            cost_index,
        }
    }

    /// Runs normalization again on an already normalized instance. The result
    /// is identical to `self`.
    pub fn renormalize(&self) -> Result<Instance> {
        normalize_with_base(self.elements.clone(), self.capacity, self.base_set.clone())
    }

    /// Elements in their original (stream) order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Elements sorted by id, the order used for deterministic tie-breaking.
    pub fn elements_by_id(&self) -> Vec<Element> {
        let mut v = self.elements.clone();
        v.sort_by_key(|e| e.id);
        v
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty() && self.base_set.is_empty()
    }

    pub fn check_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyInstance)
        } else {
            Ok(())
        }
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn k_tilde(&self) -> usize {
        self.k_tilde
    }

    pub fn base_set(&self) -> &[ElementId] {
        &self.base_set
    }

    pub fn is_base(&self, id: ElementId) -> bool {
        self.base_set.binary_search(&id).is_ok()
    }

    /// Cost of `id`; base-set members cost nothing.
    pub fn cost_of(&self, id: ElementId) -> Option<f64> {
        match self.cost_index.get(&id) {
            Some(&c) => Some(c),
            None if self.is_base(id) => Some(0.0),
            None => None,
        }
    }

    pub fn set_cost(&self, ids: &[ElementId]) -> Result<f64> {
        ids.iter()
            .map(|&id| self.cost_of(id).ok_or(Error::UnknownElement(id)))
            .sum()
    }

    pub fn element(&self, id: ElementId) -> Option<Element> {
        self.cost_index.get(&id).map(|&cost| Element::new(id, cost))
    }

    /// Sub-instance restricted to `ids`, keeping capacity and base set.
    pub fn restrict(&self, ids: &[ElementId]) -> Result<Instance> {
        let keep: HashSet<ElementId> = ids.iter().copied().collect();
        for id in &keep {
            if !self.cost_index.contains_key(id) {
                return Err(Error::UnknownElement(*id));
            }
        }
        let elements = self
            .elements
            .iter()
            .filter(|e| keep.contains(&e.id))
            .copied()
            .collect();
        Ok(Instance::assemble(
            elements,
            self.capacity,
            self.base_set.clone(),
        ))
    }
}
