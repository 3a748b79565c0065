//! Runs an experiment config (default: configs/synthetic.cfg) and prints
//! the result rows as CSV.

use std::path::PathBuf;

use knapsack_submod::bench::{run_suite, write_results, ExperimentConfig};

fn main() -> knapsack_submod::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/synthetic.cfg"));
    let mut config = ExperimentConfig::from_file(&path)?;
    config.output = None;
    let rows = run_suite(&config)?;
    write_results(&rows, std::io::stdout().lock())?;
    Ok(())
}
