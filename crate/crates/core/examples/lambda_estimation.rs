//! Single-pass estimate of f(OPT) checked against the exact optimum.

use knapsack_submod::bench::LoadedDataset;
use knapsack_submod::exact::brute_force_opt;
use knapsack_submod::streaming::{estimate_lambda, ElementStream};
use knapsack_submod::{Oracle, QueryLedger};

fn main() -> knapsack_submod::Result<()> {
    let eps = 1.0 / 6.0;
    for seed in 0..5 {
        let data = LoadedDataset::synthetic(18, 3.0, seed);
        let instance = data.instance(4.0)?;
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&instance, data.objective.as_ref(), &ledger);
        let opt = brute_force_opt(&oracle)?.value;
        let mut stream = ElementStream::from_elements(instance.elements().to_vec());
        let est = estimate_lambda(&mut stream, &oracle, eps)?;
        println!(
            "seed {seed}: OPT {opt:.4} lambda {:.4} ratio {:.3} (floor {:.3}) retained {}/{}",
            est.lambda,
            est.lambda / opt,
            est.alpha,
            est.peak_retained,
            est.retention_cap
        );
    }
    Ok(())
}
