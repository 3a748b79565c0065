//! Simulated massively-parallel execution and Distributed Sieve+Max.

mod mpc;
mod sieve;

pub use mpc::{simulate_round, MpcConfig, RoundLog, RoundRecord, DEFAULT_MEMORY_FACTOR};
pub use sieve::{
    distributed_sieve_plus_max, greedy_order, sample_probability, DistributedParams, PrefixOrder,
};
