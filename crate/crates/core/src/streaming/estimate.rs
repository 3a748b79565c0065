use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instance::{fits, ElementId};
use crate::oracle::Oracle;
use crate::streaming::stream::ElementStream;

/// Result of the one-pass constant-factor estimate of `f(OPT)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaEstimate {
    /// Value of a feasible set, so `λ ≤ f(OPT)`.
    pub lambda: f64,
    /// `1/3 − ε_est`; `λ ≥ α·f(OPT)`.
    pub alpha: f64,
    pub best_singleton: Option<(ElementId, f64)>,
    /// Largest `ρ(e|∅)` seen.
    pub max_singleton_density: f64,
    /// Most elements held at once across all threshold sets.
    pub peak_retained: usize,
    /// Bound on `peak_retained` implied by the threshold grid.
    pub retention_cap: usize,
    pub queries: u64,
    pub passes: u32,
}

#[derive(Debug, Default)]
struct ThresholdSet {
    ids: Vec<ElementId>,
    cost: f64,
    value: f64,
}

/// Retention bound for grid parameter `epsilon`: the live grid spans a
/// ratio of at most `1.5·K·(1+ε)`, each set holds at most `K̃` items, and
/// one more slot keeps the best singleton.
pub fn retention_cap(capacity: f64, k_tilde: usize, epsilon: f64) -> usize {
    let levels = (1.5 * capacity * (1.0 + epsilon)).ln() / (1.0 + epsilon).ln();
    (levels.floor().max(0.0) as usize + 2) * k_tilde + 1
}

/// Single-pass estimator of `f(OPT)` over a geometric grid of thresholds.
///
/// For each arriving `e`, every live threshold set `S_τ` with `c(S_τ) < K`
/// takes `e` when `ρ(e|S_τ) ≥ τ` and `S_τ ∪ e` still fits. The live grid is
/// `{(1+ε)^i}` within `[τ_min/(1+ε), Δ]`, where `Δ` is the best singleton
/// value, `LB` the best set value so far and `τ_min = max(2LB, 2Δ)/(3K)`.
pub fn estimate_lambda(
    stream: &mut ElementStream,
    oracle: &Oracle<'_>,
    epsilon: f64,
) -> Result<LambdaEstimate> {
    if !(epsilon > 0.0 && epsilon < 1.0 / 3.0) {
        return Err(Error::InvalidParameter(format!(
            "estimator epsilon must be in (0, 1/3), got {epsilon}"
        )));
    }
    let capacity = oracle.capacity();
    let queries_before = oracle.ledger().query_count();
    let passes_before = stream.passes();
    let step = (1.0 + epsilon).ln();

    let empty_value = oracle.evaluate(&[])?;
    let mut delta = 0.0f64;
    let mut lower = 0.0f64;
    let mut best_singleton: Option<(ElementId, f64)> = None;
    let mut max_density = 0.0f64;
    let mut sets: BTreeMap<i64, ThresholdSet> = BTreeMap::new();
    let mut peak = 0;

    for e in stream.pass()? {
        let e = e?;
        if !fits(e.cost, capacity) {
            continue;
        }
        let single = oracle.evaluate(&[e.id])?;
        if single > delta {
            delta = single;
        }
        if best_singleton.is_none_or(|(_, v)| single > v) {
            best_singleton = Some((e.id, single));
        }
        if e.cost > 0.0 {
            max_density = max_density.max((single - empty_value) / e.cost);
        }
        if delta <= 0.0 {
            continue;
        }

        let tau_min = (2.0 * lower).max(2.0 * delta) / (3.0 * capacity);
        let lo = grid_floor(tau_min / (1.0 + epsilon), step, epsilon, true);
        let hi = grid_floor(delta, step, epsilon, false);
        sets.retain(|&i, _| i >= lo && i <= hi);

        for i in lo..=hi {
            let tau = (1.0 + epsilon).powi(i as i32);
            let set = sets.entry(i).or_insert_with(|| ThresholdSet {
                value: empty_value,
                ..ThresholdSet::default()
            });
            if !(set.cost < capacity) || !fits(set.cost + e.cost, capacity) {
                continue;
            }
            let with_e = if set.ids.is_empty() {
                single
            } else {
                oracle.evaluate_with(&set.ids, e.id)?
            };
            if (with_e - set.value) / e.cost >= tau {
                set.ids.push(e.id);
                set.cost += e.cost;
                set.value = with_e;
                lower = lower.max(with_e);
            }
        }
        let held: usize = sets.values().map(|s| s.ids.len()).sum::<usize>() + 1;
        peak = peak.max(held);
    }

    Ok(LambdaEstimate {
        lambda: lower.max(delta),
        alpha: 1.0 / 3.0 - epsilon,
        best_singleton,
        max_singleton_density: max_density,
        peak_retained: peak,
        retention_cap: retention_cap(capacity, oracle.instance().k_tilde(), epsilon),
        queries: oracle.ledger().query_count() - queries_before,
        passes: stream.passes() - passes_before,
    })
}

/// Smallest grid exponent `i` with `(1+ε)^i ≥ x` when `ceil`, otherwise the
/// largest with `(1+ε)^i ≤ x`.
fn grid_floor(x: f64, step: f64, epsilon: f64, ceil: bool) -> i64 {
    let base = 1.0 + epsilon;
    let mut i = (x.ln() / step).round() as i64;
    if ceil {
        while base.powi(i as i32 - 1) >= x {
            i -= 1;
        }
        while base.powi(i as i32) < x {
            i += 1;
        }
    } else {
        while base.powi(i as i32 + 1) <= x {
            i += 1;
        }
        while base.powi(i as i32) > x {
            i -= 1;
        }
    }
    i
}
