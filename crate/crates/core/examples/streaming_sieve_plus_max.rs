//! Multi-pass Sieve+Max over a stream file, with λ estimated in one pass.

use knapsack_submod::bench::LoadedDataset;
use knapsack_submod::streaming::{run_sieve_estimated, write_stream_file, ElementStream, SieveVariant};
use knapsack_submod::{Oracle, QueryLedger};

fn main() -> knapsack_submod::Result<()> {
    let data = LoadedDataset::synthetic(2000, 8.0, 1);
    let instance = data.instance(10.0)?;

    let dir = std::env::temp_dir().join("knapsack-submod-stream");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("elements.tsv");
    write_stream_file(&path, instance.elements())?;

    for variant in [SieveVariant::Sieve, SieveVariant::SieveOrMax, SieveVariant::SievePlusMax] {
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&instance, data.objective.as_ref(), &ledger);
        let mut stream = ElementStream::from_file(&path);
        let (r, est) = run_sieve_estimated(&mut stream, &oracle, 0.1, 1.0 / 6.0, variant)?;
        println!(
            "{:<15} value {:.4} items {:>2} passes {:>2} queries {:>7} peak memory {} (lambda {:.4})",
            variant.name(),
            r.value(),
            r.solution.ids.len(),
            r.passes,
            r.queries,
            r.peak_retained,
            est.lambda
        );
    }
    Ok(())
}
