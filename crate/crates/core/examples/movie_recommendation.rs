//! Movie recommendation from a MovieLens ratings file, or a small built-in
//! rating table when no path is given.

use knapsack_submod::bench::{ingest_movielens, LoadedDataset, MovieData};
use knapsack_submod::objectives::RatingVectors;
use knapsack_submod::offline::greedy_plus_max;
use knapsack_submod::streaming::{run_sieve_estimated, ElementStream, SieveVariant};
use knapsack_submod::{Oracle, QueryLedger};

fn builtin() -> MovieData {
    let r = |x: f64| Some(x);
    let table = vec![
        vec![r(5.0), r(4.5), None, r(1.0), r(2.0)],
        vec![r(4.5), r(5.0), r(1.5), None, r(2.5)],
        vec![None, r(1.0), r(5.0), r(4.0), r(4.5)],
        vec![r(1.5), None, r(4.5), r(5.0), r(4.0)],
        vec![r(3.0), r(3.0), r(3.0), r(3.5), None],
        vec![r(2.0), r(4.0), None, r(2.0), r(5.0)],
    ];
    let ratings = RatingVectors::from_dense(&table);
    MovieData {
        movie_ids: (0..table.len() as u64).collect(),
        user_ids: (0..5).collect(),
        global_mean: 0.0,
        n_ratings: table.iter().flatten().flatten().count(),
        ratings,
    }
}

fn main() -> knapsack_submod::Result<()> {
    let data = match std::env::args_os().nth(1) {
        Some(path) => ingest_movielens(path.as_ref(), Some(2000), Some(5000))?,
        None => builtin(),
    };
    let dataset = LoadedDataset::movies("movies", &data);
    let instance = dataset.instance(3.0)?;

    let ledger = QueryLedger::enforcing();
    let oracle = Oracle::new(&instance, dataset.objective.as_ref(), &ledger);
    let offline = greedy_plus_max(&oracle)?;
    let mut stream = ElementStream::from_elements(instance.elements().to_vec());
    let (streamed, _) = run_sieve_estimated(&mut stream, &oracle, 0.1, 1.0 / 6.0, SieveVariant::SievePlusMax)?;

    let titles = |ids: &[u32]| ids.iter().map(|&i| data.movie_ids[i as usize]).collect::<Vec<_>>();
    println!("greedy_plus_max picks movies {:?}, value {:.3}", titles(&offline.report.solution.ids), offline.value());
    println!("sieve_plus_max picks movies {:?}, value {:.3}", titles(&streamed.solution.ids), streamed.value());
    Ok(())
}
