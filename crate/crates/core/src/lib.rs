//! Monotone submodular maximization under a knapsack constraint.
//!
//! Offline ([`offline::greedy_plus_max`]), multi-pass streaming
//! ([`streaming::sieve_plus_max`]) and simulated-distributed
//! ([`distributed::distributed_sieve_plus_max`]) algorithms with ½-type
//! guarantees, together with the baselines they are compared against, a
//! query-counting oracle, exact and certified reference values, and the
//! experiment driver behind the `bench` binary.

pub mod bench;
pub mod distributed;
pub mod error;
pub mod exact;
pub mod instance;
pub mod objectives;
pub mod offline;
pub mod oracle;
pub mod report;
pub mod streaming;
pub mod trace;

pub use error::{Error, Result};
pub use instance::{normalize, Element, ElementId, Instance};
pub use oracle::{Objective, Oracle, QueryLedger};
pub use report::{AlgoReport, Solution};
pub use trace::GreedyTrace;
