use std::collections::HashSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::distributed::mpc::{simulate_round, MpcConfig, RoundLog, RoundRecord};
use crate::error::Result;
use crate::instance::{fits, Element, ElementId};
use crate::offline::run_greedy;
use crate::oracle::Oracle;
use crate::report::{AlgoReport, Solution};
use crate::streaming::ThresholdSchedule;
use crate::trace::GreedyTrace;

/// How the prefixes `G_i` used for augmentation are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrefixOrder {
    /// The order a greedy run restricted to `T` selects the items in.
    #[default]
    Greedy,
    /// The order the central machine collected the items in.
    Collection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributedParams {
    pub lambda: f64,
    pub alpha: f64,
    pub epsilon: f64,
    pub prefix_order: PrefixOrder,
}

impl DistributedParams {
    pub fn new(lambda: f64, alpha: f64, epsilon: f64) -> Self {
        Self {
            lambda,
            alpha,
            epsilon,
            prefix_order: PrefixOrder::Greedy,
        }
    }

    pub fn prefix_order(mut self, order: PrefixOrder) -> Self {
        self.prefix_order = order;
        self
    }
}

/// Items `T` and the performance curve in collection order.
#[derive(Debug, Clone)]
struct Collected {
    items: Vec<Element>,
    member: Vec<bool>,
    cost: f64,
    value: f64,
    trace: GreedyTrace,
}

impl Collected {
    fn ids(&self) -> Vec<ElementId> {
        self.items.iter().map(|e| e.id).collect()
    }
}

struct FilterOutput {
    /// Positions of `X_i \ T`, in the order the machine took them.
    sent: Vec<usize>,
    /// Cheapest item of `V_i` left outside `X_i`.
    cheapest_left: f64,
}

/// Probability of sampling an element into `Γ`.
pub fn sample_probability(n: usize, k_tilde: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    (4.0 * (k_tilde as f64 / n as f64).sqrt()).min(1.0)
}

/// Random partition of positions `0..n` over `machines`: a random
/// permutation dealt round-robin. Each part keeps the ground-set order.
fn partition<R: Rng>(n: usize, machines: usize, rng: &mut R) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut owner = vec![0; n];
    let mut parts = vec![Vec::with_capacity(n / machines + 1); machines];
    for (k, &pos) in perm.iter().enumerate() {
        owner[pos] = k % machines;
        parts[k % machines].push(pos);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    (parts, owner)
}

/// Distributed Sieve+Max on the simulated cluster.
///
/// Each thresholding round samples `Γ`, partitions the ground set, lets
/// every machine filter `Γ` and then its part against a private copy of
/// `T` with `ρ > t`, and lets the central machine filter the union of what
/// it receives into `T`. A last round augments the prefixes of `T`.
/// Rounds stop early once no element outside `T` fits, which cannot change
/// the output.
pub fn distributed_sieve_plus_max(
    oracle: &Oracle<'_>,
    params: &DistributedParams,
    config: &MpcConfig,
) -> Result<(AlgoReport, RoundLog)> {
    let started = Instant::now();
    let instance = oracle.instance();
    let capacity = oracle.capacity();
    let schedule = ThresholdSchedule::new(params.lambda, params.alpha, params.epsilon, capacity)?;
    let elements = instance.elements();
    let n = elements.len();
    let machines = config.machines.max(1);
    let p = if machines == 1 {
        0.0
    } else {
        sample_probability(n, instance.k_tilde())
    };

    let queries_before = oracle.ledger().query_count();
    let empty_value = oracle.evaluate(&[])?;
    let mut log = RoundLog {
        setup_queries: 1,
        ..RoundLog::default()
    };
    let mut t = Collected {
        items: Vec::new(),
        member: vec![false; n],
        cost: 0.0,
        value: empty_value,
        trace: GreedyTrace::new(empty_value),
    };
    let mut peak_load = 0;

    for (r, threshold) in schedule.thresholds().into_iter().enumerate() {
        let round = r + 1;
        let round_queries = oracle.ledger().query_count();
        let mut rng = config.round_rng(round);
        let in_gamma: Vec<bool> = (0..n).map(|_| p > 0.0 && rng.gen::<f64>() < p).collect();
        let gamma: Vec<usize> = (0..n).filter(|&i| in_gamma[i]).collect();
        let (parts, owner) = partition(n, machines, &mut rng);

        let t_ids = t.ids();
        // T members outside Γ; each machine already holds those of its own part
        let t_rest: Vec<usize> = (0..n).filter(|&i| t.member[i] && !in_gamma[i]).collect();
        let load = |(i, part): &(usize, Vec<usize>)| {
            part.len()
                + gamma.iter().filter(|&&g| owner[g] != *i).count()
                + t_rest.iter().filter(|&&g| owner[g] != *i).count()
        };
        let inputs: Vec<(usize, Vec<usize>)> = parts.into_iter().enumerate().collect();
        let loads: Vec<usize> = inputs.iter().map(load).collect();
        peak_load = peak_load.max(loads.iter().copied().max().unwrap_or(0));

        let outputs = simulate_round(
            round,
            inputs,
            load,
            config.memory_cap,
            |_, (_, part)| machine_filter(oracle, elements, &t, &t_ids, &gamma, &part, threshold),
        )?;

        // central machine: deterministic fold in machine order
        let mut considered = HashSet::new();
        let mut cheapest_left = f64::INFINITY;
        let sent: Vec<usize> = outputs.iter().map(|o| o.sent.len()).collect();
        for out in &outputs {
            cheapest_left = cheapest_left.min(out.cheapest_left);
            for &pos in &out.sent {
                if t.member[pos] || !considered.insert(pos) {
                    continue;
                }
                let e = elements[pos];
                if !fits(t.cost + e.cost, capacity) {
                    cheapest_left = cheapest_left.min(e.cost);
                    continue;
                }
                let v = oracle.evaluate_with(&t.ids(), e.id)?;
                let density = (v - t.value) / e.cost;
                if density > threshold {
                    t.items.push(e);
                    t.member[pos] = true;
                    t.cost += e.cost;
                    t.value = v;
                    t.trace.push(e.id, e.cost, density, v);
                } else {
                    cheapest_left = cheapest_left.min(e.cost);
                }
            }
        }
        log.rounds.push(RoundRecord {
            round,
            threshold,
            gamma_size: gamma.len(),
            central_received: sent.iter().sum(),
            sent,
            t_size: t.items.len(),
            max_load: loads.iter().copied().max().unwrap_or(0),
            queries: oracle.ledger().query_count() - round_queries,
        });
        if !fits(t.cost + cheapest_left, capacity) {
            break;
        }
    }

    // augmentation round
    let aug_queries = oracle.ledger().query_count();
    let (order, prefix_values) = match params.prefix_order {
        PrefixOrder::Collection => {
            let values: Vec<f64> = t.trace.steps().iter().map(|s| s.value).collect();
            (t.ids(), values)
        }
        PrefixOrder::Greedy => greedy_prefixes(oracle, &t.items)?,
    };
    let mut prefix_costs = Vec::with_capacity(order.len() + 1);
    prefix_costs.push(0.0);
    for id in &order {
        let c = instance.cost_of(*id).unwrap_or(0.0);
        prefix_costs.push(prefix_costs.last().copied().unwrap_or(0.0) + c);
    }

    let mut rng = config.round_rng(log.rounds.len() + 1);
    let (parts, _) = partition(n, machines, &mut rng);
    let aug_load = |part: &Vec<usize>| {
        part.len() + t.items.len() - part.iter().filter(|&&pos| t.member[pos]).count()
    };
    peak_load = peak_load.max(parts.iter().map(aug_load).max().unwrap_or(0));
    let round = log.rounds.len() + 1;
    let bests = simulate_round(round, parts, aug_load, config.memory_cap, |_, part| {
        let mut best: Vec<(Option<ElementId>, f64)> =
            prefix_values.iter().map(|&v| (None, v)).collect();
        for pos in part {
            if t.member[pos] {
                continue;
            }
            let e = elements[pos];
            let fitting = prefix_costs.partition_point(|&c| fits(c + e.cost, capacity));
            let Some(j) = fitting.checked_sub(1) else {
                continue;
            };
            let v = oracle.evaluate_with(&order[..j], e.id)?;
            if v > best[j].1 {
                best[j] = (Some(e.id), v);
            }
        }
        let mut pick = 0;
        for (i, b) in best.iter().enumerate() {
            if b.1 > best[pick].1 {
                pick = i;
            }
        }
        Ok((pick, best[pick]))
    })?;
    log.augmentation_queries = oracle.ledger().query_count() - aug_queries;

    let mut winner = (0, (None, prefix_values[0]));
    for &b in &bests {
        if b.1 .1 > winner.1 .1 {
            winner = b;
        }
    }
    let (j, (item, value)) = winner;
    let mut ids = order[..j].to_vec();
    ids.extend(item);

    let mut report = AlgoReport::new("distributed_sieve_plus_max", Solution::new(instance, ids, value)?);
    report.queries = oracle.ledger().query_count() - queries_before;
    report.rounds = log.rounds.len() as u32 + 1;
    report.max_central_receipts = log.max_central_received() as u64;
    report.peak_retained = peak_load;
    report.wall_time = started.elapsed();
    report.trace = Some(t.trace);
    Ok((report, log))
}

fn machine_filter(
    oracle: &Oracle<'_>,
    elements: &[Element],
    t: &Collected,
    t_ids: &[ElementId],
    gamma: &[usize],
    part: &[usize],
    threshold: f64,
) -> Result<FilterOutput> {
    let capacity = oracle.capacity();
    let mut x = t_ids.to_vec();
    let mut x_cost = t.cost;
    let mut x_value = t.value;
    let mut seen = HashSet::new();
    let mut sent = Vec::new();
    let mut cheapest_left = f64::INFINITY;

    for &pos in gamma.iter().chain(part) {
        if t.member[pos] {
            continue;
        }
        let e = elements[pos];
        if !seen.insert(pos) {
            continue;
        }
        let accepted = fits(x_cost + e.cost, capacity) && {
            let v = oracle.evaluate_with(&x, e.id)?;
            if (v - x_value) / e.cost > threshold {
                x_value = v;
                true
            } else {
                false
            }
        };
        if accepted {
            x.push(e.id);
            x_cost += e.cost;
            sent.push(pos);
        }
    }
    for &pos in part {
        if !t.member[pos] && !sent.contains(&pos) {
            cheapest_left = cheapest_left.min(elements[pos].cost);
        }
    }
    Ok(FilterOutput {
        sent,
        cheapest_left,
    })
}

/// Greedy selection order of `items`, with `f` of every prefix.
pub fn greedy_order(oracle: &Oracle<'_>, items: &[Element]) -> Result<Vec<ElementId>> {
    Ok(greedy_prefixes(oracle, items)?.0)
}

fn greedy_prefixes(oracle: &Oracle<'_>, items: &[Element]) -> Result<(Vec<ElementId>, Vec<f64>)> {
    let run = run_greedy(oracle, &[], items)?;
    let values = run.trace.steps().iter().map(|s| s.value).collect();
    Ok((run.trace.order().to_vec(), values))
}
