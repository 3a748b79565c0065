//! Exact optimum of small random instances next to every offline and
//! streaming algorithm.

use knapsack_submod::bench::{run_algorithm, Algorithm, ExperimentConfig, LoadedDataset};
use knapsack_submod::exact::brute_force_opt;
use knapsack_submod::{Oracle, QueryLedger};

fn main() -> knapsack_submod::Result<()> {
    let config = ExperimentConfig::default();
    let mut worst = vec![f64::INFINITY; Algorithm::ALL.len()];
    for seed in 0..50 {
        let data = LoadedDataset::synthetic(14, 2.0, seed);
        let instance = data.instance(5.0)?;
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&instance, data.objective.as_ref(), &ledger);
        let opt = brute_force_opt(&oracle)?.value;
        for (w, alg) in worst.iter_mut().zip(Algorithm::ALL) {
            let v = run_algorithm(&oracle, alg, &config, seed)?.value();
            *w = w.min(v / opt);
        }
    }
    println!("worst ratio to the optimum over 50 instances");
    for (w, alg) in worst.iter().zip(Algorithm::ALL) {
        println!("  {:<28} {w:.4}", alg.name());
    }
    Ok(())
}
