//! Offline algorithms: Greedy, GreedyOrMax, Greedy+Max and PartialEnum+Greedy.
//!
//! All of them share one evaluation sweep per greedy iteration: with the
//! current prefix `G` and its cached value, every remaining candidate `e` is
//! evaluated once as `f(G ∪ e)`. The density argmax picks the next greedy
//! item, the gain argmax picks the augmenting item for Greedy+Max, and the
//! first sweep doubles as the singleton scan for GreedyOrMax. Greedy,
//! GreedyOrMax and Greedy+Max therefore spend exactly the same queries.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{fits, Element, ElementId};
use crate::oracle::Oracle;
use crate::report::{AlgoReport, Solution};
use crate::trace::GreedyTrace;

/// Sweeps at least this long are evaluated on the rayon pool.
const PARALLEL_SWEEP: usize = 256;

/// Best single-item extension of greedy prefix `G_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Augmentation {
    pub prefix_index: usize,
    /// `s_i`, or `None` if nothing fits next to `G_i`.
    pub item: Option<ElementId>,
    /// `f(G_i ∪ s_i)`.
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct OfflineResult {
    pub report: AlgoReport,
    /// Filled by Greedy+Max only.
    pub augmentations: Vec<Augmentation>,
}

impl OfflineResult {
    pub fn value(&self) -> f64 {
        self.report.solution.value
    }
}

/// Everything one greedy run learns.
#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub seed: Vec<ElementId>,
    pub seed_cost: f64,
    /// Greedy items after the seed, with `f(seed ∪ G_i)` per prefix.
    pub trace: GreedyTrace,
    pub augmentations: Vec<Augmentation>,
    /// Best feasible single item next to the seed, from the first sweep.
    pub best_singleton: Option<(ElementId, f64)>,
}

impl GreedyRun {
    pub fn selected(&self) -> Vec<ElementId> {
        let mut ids = self.seed.clone();
        ids.extend_from_slice(self.trace.order());
        ids
    }

    pub fn value(&self) -> f64 {
        self.trace.final_value()
    }
}

fn sweep(oracle: &Oracle<'_>, prefix: &[ElementId], candidates: &[Element]) -> Result<Vec<f64>> {
    let eval = |e: &Element| oracle.evaluate_with(prefix, e.id);
    if candidates.len() >= PARALLEL_SWEEP {
        candidates.par_iter().map(eval).collect()
    } else {
        candidates.iter().map(eval).collect()
    }
}

/// Greedy by marginal density starting from `seed`, over `candidates`.
///
/// Candidates are scanned in id order and every argmax keeps the first
/// maximizer, so ties go to the smallest id. Items that stop fitting are
/// dropped from the working list for good.
pub fn run_greedy(
    oracle: &Oracle<'_>,
    seed: &[Element],
    candidates: &[Element],
) -> Result<GreedyRun> {
    let capacity = oracle.capacity();
    let seed_ids: Vec<ElementId> = seed.iter().map(|e| e.id).collect();
    let seed_cost: f64 = seed.iter().map(|e| e.cost).sum();

    let mut remaining: Vec<Element> = candidates
        .iter()
        .filter(|e| !seed_ids.contains(&e.id) && fits(seed_cost + e.cost, capacity))
        .copied()
        .collect();
    remaining.sort_by_key(|e| e.id);

    let mut current = seed_ids.clone();
    let mut current_cost = seed_cost;
    let mut current_value = oracle.evaluate(&current)?;
    let mut trace = GreedyTrace::new(current_value);
    let mut augmentations = Vec::new();
    let mut best_singleton = None;

    while !remaining.is_empty() {
        let values = sweep(oracle, &current, &remaining)?;

        let mut gain_pick = 0;
        let mut density_pick = 0;
        let mut best_density = f64::NEG_INFINITY;
        for (k, (&v, e)) in values.iter().zip(&remaining).enumerate() {
            if v > values[gain_pick] {
                gain_pick = k;
            }
            let density = (v - current_value) / e.cost;
            if density > best_density {
                best_density = density;
                density_pick = k;
            }
        }
        if best_singleton.is_none() {
            best_singleton = Some((remaining[gain_pick].id, values[gain_pick]));
        }
        augmentations.push(Augmentation {
            prefix_index: trace.len(),
            item: Some(remaining[gain_pick].id),
            value: values[gain_pick],
        });

        let picked = remaining.remove(density_pick);
        current.push(picked.id);
        current_cost += picked.cost;
        current_value = values[density_pick];
        trace.push(picked.id, picked.cost, best_density, current_value);
        remaining.retain(|e| fits(current_cost + e.cost, capacity));
    }
    augmentations.push(Augmentation {
        prefix_index: trace.len(),
        item: None,
        value: current_value,
    });

    Ok(GreedyRun {
        seed: seed_ids,
        seed_cost,
        trace,
        augmentations,
        best_singleton,
    })
}

fn finish(
    oracle: &Oracle<'_>,
    name: &str,
    ids: Vec<ElementId>,
    value: f64,
    start: (Instant, u64),
    trace: Option<GreedyTrace>,
) -> Result<AlgoReport> {
    let mut report = AlgoReport::new(name, Solution::new(oracle.instance(), ids, value)?);
    report.queries = oracle.ledger().query_count() - start.1;
    report.wall_time = start.0.elapsed();
    report.peak_retained = oracle.instance().len();
    report.trace = trace;
    Ok(report)
}

fn started(oracle: &Oracle<'_>) -> (Instant, u64) {
    (Instant::now(), oracle.ledger().query_count())
}

/// Plain density greedy; the report carries the greedy trace.
pub fn greedy(oracle: &Oracle<'_>) -> Result<OfflineResult> {
    let start = started(oracle);
    let run = run_greedy(oracle, &[], oracle.instance().elements())?;
    let report = finish(
        oracle,
        "greedy",
        run.selected(),
        run.value(),
        start,
        Some(run.trace.clone()),
    )?;
    Ok(OfflineResult {
        report,
        augmentations: Vec::new(),
    })
}

/// Better of the greedy solution and the best single item.
pub fn greedy_or_max(oracle: &Oracle<'_>) -> Result<OfflineResult> {
    let start = started(oracle);
    let run = run_greedy(oracle, &[], oracle.instance().elements())?;
    let (ids, value) = match run.best_singleton {
        Some((id, v)) if v > run.value() => (vec![id], v),
        _ => (run.selected(), run.value()),
    };
    let report = finish(oracle, "greedy_or_max", ids, value, start, Some(run.trace))?;
    Ok(OfflineResult {
        report,
        augmentations: Vec::new(),
    })
}

/// Greedy+Max: every greedy prefix `G_i` (including `G_0 = ∅`) is extended
/// by the item of largest marginal gain that still fits, and the best of
/// these augmented sets (or of the plain prefixes) is returned.
pub fn greedy_plus_max(oracle: &Oracle<'_>) -> Result<OfflineResult> {
    let start = started(oracle);
    let run = run_greedy(oracle, &[], oracle.instance().elements())?;
    let (ids, value) = best_augmentation(&run);
    let report = finish(oracle, "greedy_plus_max", ids, value, start, Some(run.trace.clone()))?;
    Ok(OfflineResult {
        report,
        augmentations: run.augmentations,
    })
}

fn best_augmentation(run: &GreedyRun) -> (Vec<ElementId>, f64) {
    // S starts as the seed itself
    let mut best_value = run.trace.steps()[0].value;
    let mut best: Option<&Augmentation> = None;
    for aug in &run.augmentations {
        if aug.value > best_value {
            best_value = aug.value;
            best = Some(aug);
        }
    }
    let mut ids = run.seed.clone();
    if let Some(aug) = best {
        ids.extend_from_slice(run.trace.prefix(aug.prefix_index));
        ids.extend(aug.item);
    }
    (ids, best_value)
}

/// Number of seeds of size at most `d` among `n` items.
fn seed_count(n: usize, d: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for j in 0..=d.min(n) {
        total += binom;
        binom = binom * (n - j) as u128 / (j + 1) as u128;
    }
    total
}

/// Worst-case query count of [`partial_enum_greedy`].
pub fn partial_enum_query_bound(n: usize, k_tilde: usize, d: usize) -> u128 {
    seed_count(n, d) * (1 + (n as u128) * (k_tilde as u128))
}

/// Greedy completed from every feasible seed of at most `d` items; the best
/// completion wins. `d = 0` is plain greedy.
///
/// Fails with [`Error::BudgetExceeded`] up front when the worst-case query
/// count exceeds `budget`.
pub fn partial_enum_greedy(oracle: &Oracle<'_>, d: usize, budget: u64) -> Result<OfflineResult> {
    if d > 3 {
        return Err(Error::InvalidParameter(format!(
            "partial enumeration depth must be at most 3, got {d}"
        )));
    }
    let instance = oracle.instance();
    if partial_enum_query_bound(instance.len(), instance.k_tilde(), d) > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    let start = started(oracle);
    let elements = instance.elements_by_id();
    let capacity = instance.capacity();

    let mut best: Option<(Vec<ElementId>, f64)> = None;
    let mut seed: Vec<Element> = Vec::with_capacity(d);
    enumerate_seeds(&elements, 0, d, &mut seed, 0.0, capacity, &mut |seed| {
        let run = run_greedy(oracle, seed, &elements)?;
        if best.as_ref().is_none_or(|(_, v)| run.value() > *v) {
            best = Some((run.selected(), run.value()));
        }
        Ok(())
    })?;
    let (ids, value) = best.expect("the empty seed is always feasible");
    let report = finish(oracle, &format!("partial_enum_d{d}"), ids, value, start, None)?;
    Ok(OfflineResult {
        report,
        augmentations: Vec::new(),
    })
}

fn enumerate_seeds(
    elements: &[Element],
    from: usize,
    depth: usize,
    seed: &mut Vec<Element>,
    cost: f64,
    capacity: f64,
    visit: &mut dyn FnMut(&[Element]) -> Result<()>,
) -> Result<()> {
    visit(seed)?;
    if depth == 0 {
        return Ok(());
    }
    for k in from..elements.len() {
        let e = elements[k];
        if !fits(cost + e.cost, capacity) {
            continue;
        }
        seed.push(e);
        enumerate_seeds(elements, k + 1, depth - 1, seed, cost + e.cost, capacity, visit)?;
        seed.pop();
    }
    Ok(())
}
