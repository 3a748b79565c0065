//! Multi-pass thresholding: Sieve, SieveOrMax and Sieve+Max.

use std::collections::HashSet;
use std::time::Instant;

use crate::error::Result;
use crate::instance::{fits, Element, ElementId};
use crate::oracle::Oracle;
use crate::report::{AlgoReport, Solution};
use crate::streaming::estimate::{estimate_lambda, LambdaEstimate};
use crate::streaming::schedule::ThresholdSchedule;
use crate::streaming::stream::ElementStream;
use crate::trace::GreedyTrace;

const SKIP_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SieveParams {
    /// Estimate of `f(OPT)` with `α·f(OPT) ≤ λ ≤ f(OPT)`.
    pub lambda: f64,
    pub alpha: f64,
    pub epsilon: f64,
    /// Upper bound on every singleton density `ρ(e|∅)`, when known.
    /// Thresholds above it cannot admit anything, so their passes are
    /// skipped; the output is unchanged.
    pub density_ceiling: Option<f64>,
    /// Best feasible singleton `(id, f({e}))`, when already known.
    pub known_singleton: Option<(ElementId, f64)>,
    /// Skip thresholds whose pass cannot add anything. Turning this off
    /// takes one pass per threshold until nothing fits, with the same result.
    pub skip_idle_passes: bool,
}

impl SieveParams {
    pub fn new(lambda: f64, alpha: f64, epsilon: f64) -> Self {
        Self {
            lambda,
            alpha,
            epsilon,
            density_ceiling: None,
            known_singleton: None,
            skip_idle_passes: true,
        }
    }

    pub fn skip_idle_passes(mut self, skip: bool) -> Self {
        self.skip_idle_passes = skip;
        self
    }

    /// Parameters seeded by a single-pass estimate.
    pub fn from_estimate(estimate: &LambdaEstimate, epsilon: f64) -> Self {
        Self {
            lambda: estimate.lambda,
            alpha: estimate.alpha,
            epsilon,
            density_ceiling: Some(estimate.max_singleton_density),
            known_singleton: estimate.best_singleton,
            skip_idle_passes: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveVariant {
    /// Thresholding alone, returns `f(T)`.
    Sieve,
    /// Better of `T` and the best single item.
    SieveOrMax,
    /// Thresholding followed by one augmentation pass.
    SievePlusMax,
}

impl SieveVariant {
    pub fn name(self) -> &'static str {
        match self {
            SieveVariant::Sieve => "sieve",
            SieveVariant::SieveOrMax => "sieve_or_max",
            SieveVariant::SievePlusMax => "sieve_plus_max",
        }
    }
}

/// State of the thresholding stage: the collected set `T` in insertion order.
#[derive(Debug, Clone)]
pub struct SieveState {
    pub collected: Vec<Element>,
    members: HashSet<ElementId>,
    pub cost: f64,
    pub value: f64,
    /// Curve `t` of the collected prefixes.
    pub trace: GreedyTrace,
    pub best_singleton: Option<(ElementId, f64)>,
    pub thresholding_passes: u32,
    /// Thresholds of the schedule whose pass was not needed.
    pub skipped_thresholds: u32,
}

impl SieveState {
    fn new(empty_value: f64) -> Self {
        Self {
            collected: Vec::new(),
            members: HashSet::new(),
            cost: 0.0,
            value: empty_value,
            trace: GreedyTrace::new(empty_value),
            best_singleton: None,
            thresholding_passes: 0,
            skipped_thresholds: 0,
        }
    }

    pub fn ids(&self) -> Vec<ElementId> {
        self.collected.iter().map(|e| e.id).collect()
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.members.contains(&id)
    }

    fn offer_singleton(&mut self, id: ElementId, value: f64) {
        if self.best_singleton.is_none_or(|(_, v)| value > v) {
            self.best_singleton = Some((id, value));
        }
    }
}

/// Runs the thresholding stage of Sieve+Max: one pass per threshold,
/// adding `e` whenever `ρ(e|T) ≥ τ` and `e` still fits.
///
/// Passes that provably add nothing are not taken. Every element left out
/// of a pass had density at most the largest rejected density `r` of that
/// pass, and densities only shrink as `T` grows, so thresholds above `r`
/// are skipped; `density_ceiling` plays the role of `r` before the first
/// pass. Thresholding also stops once no element outside `T` fits. The
/// collected set is the same as with every pass taken.
pub fn thresholding_stage(
    stream: &mut ElementStream,
    oracle: &Oracle<'_>,
    params: &SieveParams,
    track_singleton: bool,
) -> Result<SieveState> {
    let capacity = oracle.capacity();
    let schedule = ThresholdSchedule::new(params.lambda, params.alpha, params.epsilon, capacity)?;
    let mut state = SieveState::new(oracle.evaluate(&[])?);
    if let Some((id, v)) = params.known_singleton {
        state.offer_singleton(id, v);
    }
    let mut need_singletons = track_singleton && params.known_singleton.is_none();

    let mut ceiling = params.density_ceiling.filter(|_| params.skip_idle_passes);
    for tau in schedule.thresholds() {
        if ceiling.is_some_and(|r| above(tau, r)) {
            state.skipped_thresholds += 1;
            continue;
        }
        state.thresholding_passes += 1;
        let mut min_left_out = f64::INFINITY;
        let mut max_rejected = f64::NEG_INFINITY;
        for e in stream.pass()? {
            let e = e?;
            if state.contains(e.id) {
                continue;
            }
            let fits_now = fits(state.cost + e.cost, capacity);
            if need_singletons && fits(e.cost, capacity) {
                let single = if state.collected.is_empty() && fits_now {
                    None
                } else {
                    Some(oracle.evaluate(&[e.id])?)
                };
                if let Some(v) = single {
                    state.offer_singleton(e.id, v);
                }
            }
            if !fits_now {
                min_left_out = min_left_out.min(e.cost);
                continue;
            }
            let ids = state.ids();
            let with_e = oracle.evaluate_with(&ids, e.id)?;
            if need_singletons && state.collected.is_empty() {
                state.offer_singleton(e.id, with_e);
            }
            let density = (with_e - state.value) / e.cost;
            if density >= tau {
                state.collected.push(e);
                state.members.insert(e.id);
                state.cost += e.cost;
                state.value = with_e;
                state.trace.push(e.id, e.cost, density, with_e);
            } else {
                min_left_out = min_left_out.min(e.cost);
                max_rejected = max_rejected.max(density);
            }
        }
        need_singletons = false;
        if params.skip_idle_passes {
            ceiling = Some(max_rejected);
        }
        if !fits(state.cost + min_left_out, capacity) {
            break;
        }
    }
    Ok(state)
}

/// Whether threshold `tau` is out of reach for densities at most `r`. The
/// margin keeps rounding in recomputed densities from skipping a useful pass.
fn above(tau: f64, r: f64) -> bool {
    if r == f64::NEG_INFINITY {
        return true;
    }
    tau > r + SKIP_MARGIN * r.abs()
}

/// Runs one of the sieve variants with a given `λ`.
pub fn run_sieve(
    stream: &mut ElementStream,
    oracle: &Oracle<'_>,
    params: &SieveParams,
    variant: SieveVariant,
) -> Result<AlgoReport> {
    let started = Instant::now();
    let queries_before = oracle.ledger().query_count();
    let passes_before = stream.passes();

    let track = variant == SieveVariant::SieveOrMax;
    let state = thresholding_stage(stream, oracle, params, track)?;

    let (ids, value, peak) = match variant {
        SieveVariant::Sieve => (state.ids(), state.value, state.collected.len()),
        SieveVariant::SieveOrMax => match state.best_singleton {
            Some((id, v)) if v > state.value => (vec![id], v, state.collected.len() + 1),
            _ => (state.ids(), state.value, state.collected.len() + 1),
        },
        SieveVariant::SievePlusMax => augmentation_pass(stream, oracle, &state)?,
    };

    let mut report = AlgoReport::new(variant.name(), Solution::new(oracle.instance(), ids, value)?);
    report.queries = oracle.ledger().query_count() - queries_before;
    report.passes = stream.passes() - passes_before;
    report.peak_retained = peak;
    report.wall_time = started.elapsed();
    report.trace = Some(state.trace);
    Ok(report)
}

/// Augmentation stage: for each `e ∉ T`, `j` is the longest prefix `G_j` of
/// `T` that `e` still fits next to; `s_j` keeps the best such `e`. Returns
/// the best `G_i ∪ s_i` (plain prefixes included) and the peak number of
/// retained elements.
fn augmentation_pass(
    stream: &mut ElementStream,
    oracle: &Oracle<'_>,
    state: &SieveState,
) -> Result<(Vec<ElementId>, f64, usize)> {
    let capacity = oracle.capacity();
    let steps = state.trace.steps();
    let prefix_costs: Vec<f64> = steps.iter().map(|s| s.cum_cost).collect();
    let mut best: Vec<(Option<ElementId>, f64)> = steps.iter().map(|s| (None, s.value)).collect();
    let order = state.trace.order();
    let mut augmenting = 0;

    for e in stream.pass()? {
        let e = e?;
        if state.contains(e.id) {
            continue;
        }
        let fitting = prefix_costs.partition_point(|&c| fits(c + e.cost, capacity));
        let Some(j) = fitting.checked_sub(1) else {
            continue;
        };
        let v = oracle.evaluate_with(&order[..j], e.id)?;
        if v > best[j].1 {
            if best[j].0.is_none() {
                augmenting += 1;
            }
            best[j] = (Some(e.id), v);
        }
    }

    let mut pick = 0;
    for (i, b) in best.iter().enumerate() {
        if b.1 > best[pick].1 {
            pick = i;
        }
    }
    let mut ids = order[..pick].to_vec();
    ids.extend(best[pick].0);
    Ok((ids, best[pick].1, state.collected.len() + augmenting))
}

pub fn sieve(stream: &mut ElementStream, oracle: &Oracle<'_>, params: &SieveParams) -> Result<AlgoReport> {
    run_sieve(stream, oracle, params, SieveVariant::Sieve)
}

pub fn sieve_or_max(
    stream: &mut ElementStream,
    oracle: &Oracle<'_>,
    params: &SieveParams,
) -> Result<AlgoReport> {
    run_sieve(stream, oracle, params, SieveVariant::SieveOrMax)
}

pub fn sieve_plus_max(
    stream: &mut ElementStream,
    oracle: &Oracle<'_>,
    params: &SieveParams,
) -> Result<AlgoReport> {
    run_sieve(stream, oracle, params, SieveVariant::SievePlusMax)
}

/// Estimates `λ` in one pass, then runs `variant`. The returned report
/// accounts for the estimation pass and its queries.
pub fn run_sieve_estimated(
    stream: &mut ElementStream,
    oracle: &Oracle<'_>,
    epsilon: f64,
    epsilon_est: f64,
    variant: SieveVariant,
) -> Result<(AlgoReport, LambdaEstimate)> {
    let started = Instant::now();
    let estimate = estimate_lambda(stream, oracle, epsilon_est)?;
    let mut report = if estimate.lambda > 0.0 {
        run_sieve(stream, oracle, &SieveParams::from_estimate(&estimate, epsilon), variant)?
    } else {
        // every item is worthless: nothing beats the base set
        AlgoReport::new(variant.name(), Solution::empty(oracle.evaluate(&[])?))
    };
    report.queries += estimate.queries;
    report.passes += estimate.passes;
    report.peak_retained = report.peak_retained.max(estimate.peak_retained);
    report.wall_time = started.elapsed();
    Ok((report, estimate))
}
