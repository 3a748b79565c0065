//! Vertex coverage on a SNAP edge list: degree-based costs, Greedy+Max and
//! the certified upper bound. Pass an edge list path, or run without
//! arguments for a generated graph.

use knapsack_submod::bench::{ingest_snap, upper_bound_for, LoadedDataset};
use knapsack_submod::offline::greedy_plus_max;
use knapsack_submod::{Oracle, QueryLedger};

fn main() -> knapsack_submod::Result<()> {
    let data = match std::env::args_os().nth(1) {
        Some(path) => {
            let graph = ingest_snap(path.as_ref())?;
            println!("{} vertices, {} edges", graph.n_vertices(), graph.n_edges());
            LoadedDataset::coverage("edge-list", graph.adjacency)
        }
        None => LoadedDataset::synthetic(3000, 10.0, 2),
    };
    for k in [5.0, 10.0, 20.0] {
        let instance = data.instance(k)?;
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&instance, data.objective.as_ref(), &ledger);
        let r = greedy_plus_max(&oracle)?;
        let ub = upper_bound_for(&instance, data.objective.as_ref())?;
        println!(
            "K = {k:>4}: {} vertices cover {:.2}% (bound {:.2}%, ratio ≥ {:.3})",
            r.report.solution.ids.len(),
            100.0 * r.value(),
            100.0 * ub,
            r.value() / ub
        );
    }
    Ok(())
}
