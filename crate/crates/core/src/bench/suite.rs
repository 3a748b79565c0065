use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bench::config::{Algorithm, ExperimentConfig};
use crate::bench::datasets::LoadedDataset;
use crate::distributed::{distributed_sieve_plus_max, DistributedParams, MpcConfig};
use crate::error::{Error, Result};
use crate::exact::upper_bound_opt;
use crate::instance::Instance;
use crate::offline::{greedy, greedy_or_max, greedy_plus_max, partial_enum_greedy};
use crate::oracle::{Objective, Oracle, QueryLedger};
use crate::report::{AlgoReport, Solution};
use crate::streaming::{estimate_lambda, run_sieve_estimated, ElementStream, SieveVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Ok,
    /// The cell hit its query budget; the row carries no measurement.
    BudgetExceeded,
}

/// One (dataset, algorithm, K) measurement. Value and wall time are means
/// over the configured iterations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub dataset: String,
    pub algorithm: String,
    #[serde(rename = "K")]
    pub k: f64,
    pub value: f64,
    pub upper_bound: f64,
    pub approx_ratio: f64,
    pub queries: u64,
    pub passes: u32,
    pub rounds: u32,
    pub wall_time_ms: f64,
    pub value_std: f64,
    pub wall_time_ms_std: f64,
    pub status: CellStatus,
}

impl ResultRow {
    pub fn is_flagged(&self) -> bool {
        self.status != CellStatus::Ok
    }
}

pub const CSV_HEADER: [&str; 13] = [
    "dataset",
    "algorithm",
    "K",
    "value",
    "upper_bound",
    "approx_ratio",
    "queries",
    "passes",
    "rounds",
    "wall_time_ms",
    "value_std",
    "wall_time_ms_std",
    "status",
];

pub fn write_results<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_results(path: &Path) -> Result<Vec<ResultRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    Ok(reader.deserialize().collect::<std::result::Result<_, _>>()?)
}

/// Loads the configured dataset, runs every cell and writes the CSV when an
/// output path is set.
pub fn run_suite(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let dataset = LoadedDataset::load(config)?;
    let rows = run_suite_on(&dataset, config)?;
    if let Some(path) = &config.output {
        write_results(&rows, File::create(path)?)?;
    }
    Ok(rows)
}

/// Runs every (K, algorithm) cell of `config` on `dataset`, in config order.
///
/// Each cell gets a fresh ledger capped at the query budget; a cell that
/// runs out is reported as a flagged row and the suite moves on. The upper
/// bound comes from one greedy trace per `K`.
pub fn run_suite_on(dataset: &LoadedDataset, config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for &k in &config.k_values {
        let instance = dataset.instance(k)?;
        let upper_bound = upper_bound_for(&instance, dataset.objective.as_ref())?;
        for &algorithm in &config.algorithms {
            rows.push(run_cell(dataset, &instance, algorithm, k, upper_bound, config)?);
        }
    }
    Ok(rows)
}

/// Certified bound on `f(OPT)` from a plain greedy run.
pub fn upper_bound_for(instance: &Instance, objective: &dyn Objective) -> Result<f64> {
    let ledger = QueryLedger::enforcing();
    let oracle = Oracle::new(instance, objective, &ledger);
    let run = greedy(&oracle)?;
    let trace = run.report.trace.expect("greedy records its trace");
    Ok(upper_bound_opt(instance, objective, &trace)?.0)
}

fn run_cell(
    dataset: &LoadedDataset,
    instance: &Instance,
    algorithm: Algorithm,
    k: f64,
    upper_bound: f64,
    config: &ExperimentConfig,
) -> Result<ResultRow> {
    let mut reports = Vec::with_capacity(config.iterations);
    for it in 0..config.iterations {
        let ledger = QueryLedger::enforcing().with_budget(config.budget);
        let oracle = Oracle::new(instance, dataset.objective.as_ref(), &ledger);
        match run_algorithm(&oracle, algorithm, config, config.seed.wrapping_add(it as u64)) {
            Ok(r) => reports.push(r),
            Err(Error::BudgetExceeded { .. }) => {
                return Ok(ResultRow {
                    dataset: dataset.name.clone(),
                    algorithm: algorithm.name().to_string(),
                    k,
                    value: 0.0,
                    upper_bound,
                    approx_ratio: 0.0,
                    queries: 0,
                    passes: 0,
                    rounds: 0,
                    wall_time_ms: 0.0,
                    value_std: 0.0,
                    wall_time_ms_std: 0.0,
                    status: CellStatus::BudgetExceeded,
                })
            }
            Err(e) => return Err(e),
        }
    }
    let values: Vec<f64> = reports.iter().map(AlgoReport::value).collect();
    let times: Vec<f64> = reports
        .iter()
        .map(|r| r.wall_time.as_secs_f64() * 1e3)
        .collect();
    let (value, value_std) = mean_std(&values);
    let (wall_time_ms, wall_time_ms_std) = mean_std(&times);
    let queries = mean_std(&reports.iter().map(|r| r.queries as f64).collect::<Vec<_>>()).0;
    let last = reports.last().expect("at least one iteration");
    let approx_ratio = if upper_bound > 0.0 {
        value / upper_bound
    } else {
        1.0
    };
    Ok(ResultRow {
        dataset: dataset.name.clone(),
        algorithm: algorithm.name().to_string(),
        k,
        value,
        upper_bound,
        approx_ratio,
        queries: queries.round() as u64,
        passes: last.passes,
        rounds: last.rounds,
        wall_time_ms,
        value_std,
        wall_time_ms_std,
        status: CellStatus::Ok,
    })
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Runs one algorithm with the suite's parameters. Streaming and
/// distributed runs take `λ` from the one-pass estimator; its queries and
/// pass are included in the report.
pub fn run_algorithm(
    oracle: &Oracle<'_>,
    algorithm: Algorithm,
    config: &ExperimentConfig,
    seed: u64,
) -> Result<AlgoReport> {
    let instance = oracle.instance();
    let stream = || ElementStream::from_elements(instance.elements().to_vec());
    let sieve = |variant| {
        run_sieve_estimated(&mut stream(), oracle, config.epsilon, config.epsilon_est, variant)
            .map(|(r, _)| r)
    };
    match algorithm {
        Algorithm::Greedy => greedy(oracle).map(|r| r.report),
        Algorithm::GreedyOrMax => greedy_or_max(oracle).map(|r| r.report),
        Algorithm::GreedyPlusMax => greedy_plus_max(oracle).map(|r| r.report),
        Algorithm::PartialEnum => partial_enum_greedy(oracle, config.d, config.budget).map(|r| r.report),
        Algorithm::Sieve => sieve(SieveVariant::Sieve),
        Algorithm::SieveOrMax => sieve(SieveVariant::SieveOrMax),
        Algorithm::SievePlusMax => sieve(SieveVariant::SievePlusMax),
        Algorithm::DistributedSievePlusMax => {
            let estimate = estimate_lambda(&mut stream(), oracle, config.epsilon_est)?;
            if estimate.lambda <= 0.0 {
                let mut r = AlgoReport::new(algorithm.name(), Solution::empty(oracle.evaluate(&[])?));
                r.queries = estimate.queries + 1;
                return Ok(r);
            }
            let params = DistributedParams::new(estimate.lambda, estimate.alpha, config.epsilon);
            let mpc = MpcConfig::for_instance(instance.len(), instance.k_tilde(), seed);
            let (mut report, _) = distributed_sieve_plus_max(oracle, &params, &mpc)?;
            report.queries += estimate.queries;
            report.passes = estimate.passes;
            Ok(report)
        }
    }
}
