//! The hidden-pair objective: with n items of half the capacity, only the
//! hidden pair is worth 1. Algorithms limited to feasible queries find it
//! only by querying that exact pair.

use knapsack_submod::bench::{run_algorithm, Algorithm, ExperimentConfig};
use knapsack_submod::objectives::{HiddenPairObjective, HiddenPairVariant};
use knapsack_submod::{normalize, Oracle, QueryLedger};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> knapsack_submod::Result<()> {
    let n = 50;
    let config = ExperimentConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    println!("n = {n}, all {} pairs would take that many queries", n * (n - 1) / 2);
    for alg in Algorithm::ALL {
        let f = HiddenPairObjective::random(n, HiddenPairVariant::Exact, &mut rng);
        let instance = normalize(f.elements(2.0), 2.0)?;
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&instance, &f, &ledger);
        let r = run_algorithm(&oracle, alg, &config, 0)?;
        println!(
            "{:<28} value {:.1} queries {:>6} pair queried: {}",
            alg.name(),
            r.value(),
            r.queries,
            f.pair_was_queried()
        );
    }
    Ok(())
}
