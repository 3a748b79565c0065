//! Greedy, GreedyOrMax and Greedy+Max on a small modular instance where
//! plain greedy fills the knapsack with cheap items.

use knapsack_submod::objectives::ModularObjective;
use knapsack_submod::offline::{greedy, greedy_or_max, greedy_plus_max};
use knapsack_submod::{normalize, Element, Oracle, QueryLedger};

fn main() -> knapsack_submod::Result<()> {
    let costs = [1.0, 1.0, 3.0, 4.0, 2.5];
    let values = vec![1.0, 0.9, 2.0, 3.5, 1.2];
    let instance = normalize(
        costs.iter().enumerate().map(|(i, &c)| Element::new(i as u32, c)).collect(),
        5.0,
    )?;
    let f = ModularObjective::new(values);

    for (name, alg) in [
        ("greedy", greedy as fn(&Oracle<'_>) -> _),
        ("greedy_or_max", greedy_or_max),
        ("greedy_plus_max", greedy_plus_max),
    ] {
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&instance, &f, &ledger);
        let r = alg(&oracle)?;
        println!(
            "{name:<16} items {:?} value {:.2} cost {:.2} queries {}",
            r.report.solution.ids,
            r.value(),
            r.report.solution.cost,
            r.report.queries
        );
    }
    Ok(())
}
