use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use knapsack_submod::bench::{
    run_suite, upper_bound_for, verify_dataset, DatasetKind, ExperimentConfig, LoadedDataset,
};
use knapsack_submod::exact::brute_force_opt;
use knapsack_submod::offline::greedy_plus_max;
use knapsack_submod::{Oracle, QueryLedger};

#[derive(Parser)]
#[command(name = "bench", about = "Knapsack-constrained submodular maximization benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every (K, algorithm) cell of an experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's iteration count.
        #[arg(long)]
        iterations: Option<usize>,
        /// Overrides the config's output path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact optimum of a small dataset, next to Greedy+Max and the upper bound.
    Brute {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        k: f64,
        #[arg(long, default_value = "snap-edgelist")]
        kind: String,
    },
    /// Dataset utilities.
    Datasets {
        #[command(subcommand)]
        command: DatasetsCommand,
    },
}

#[derive(Subcommand)]
enum DatasetsCommand {
    /// Ingest a dataset file and report its shape and cost range.
    Verify { path: PathBuf },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> knapsack_submod::Result<ExitCode> {
    match cli.command {
        Command::Run {
            config,
            iterations,
            output,
        } => {
            let mut cfg = ExperimentConfig::from_file(&config)?;
            if let Some(it) = iterations {
                cfg.iterations = it.max(1);
            }
            if output.is_some() {
                cfg.output = output;
            }
            let rows = run_suite(&cfg)?;
            println!(
                "{:<28} {:>8} {:>12} {:>12} {:>8} {:>12}  status",
                "algorithm", "K", "value", "upper_bound", "ratio", "queries"
            );
            for r in &rows {
                println!(
                    "{:<28} {:>8} {:>12.6} {:>12.6} {:>8.4} {:>12}  {:?}",
                    r.algorithm, r.k, r.value, r.upper_bound, r.approx_ratio, r.queries, r.status
                );
            }
            if let Some(path) = &cfg.output {
                println!("wrote {}", path.display());
            }
            let flagged = rows.iter().filter(|r| r.is_flagged()).count();
            if flagged > 0 {
                eprintln!("{flagged} cell(s) flagged");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Brute { dataset, k, kind } => {
            let kind: DatasetKind = kind
                .parse()
                .map_err(knapsack_submod::Error::InvalidParameter)?;
            let cfg = ExperimentConfig {
                kind,
                dataset: Some(dataset),
                ..ExperimentConfig::default()
            };
            let data = LoadedDataset::load(&cfg)?;
            let instance = data.instance(k)?;
            let ledger = QueryLedger::enforcing();
            let oracle = Oracle::new(&instance, data.objective.as_ref(), &ledger);
            let opt = brute_force_opt(&oracle)?;
            let gpm = greedy_plus_max(&oracle)?;
            let ub = upper_bound_for(&instance, data.objective.as_ref())?;
            println!("elements: {}  capacity: {}", instance.len(), instance.capacity());
            println!("optimum: {:?}  value {}  cost {}", opt.ids, opt.value, opt.cost);
            println!(
                "greedy_plus_max: {:?}  value {}  ratio {:.6}",
                gpm.report.solution.ids,
                gpm.value(),
                if opt.value > 0.0 { gpm.value() / opt.value } else { 1.0 }
            );
            println!("upper bound: {ub}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Datasets {
            command: DatasetsCommand::Verify { path },
        } => {
            let summary = verify_dataset(&path)?;
            println!("{summary}");
            if summary.is_valid() {
                println!("ok");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("invalid");
                Ok(ExitCode::from(2))
            }
        }
    }
}
