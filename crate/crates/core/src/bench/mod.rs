//! Data ingestion, experiment configuration and the benchmark driver.

mod config;
mod datasets;
mod ingest;
mod suite;

pub use config::{Algorithm, DatasetKind, ExperimentConfig};
pub use datasets::{random_graph, random_out_degree_graph, verify_dataset, DatasetSummary, LoadedDataset};
pub use ingest::{id_map_path, ingest_movielens, ingest_snap, MovieData, SnapGraph};
pub use suite::{
    read_results, run_algorithm, run_suite, run_suite_on, upper_bound_for, write_results,
    CellStatus, ResultRow, CSV_HEADER,
};
