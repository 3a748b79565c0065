//! Multi-pass streaming algorithms over a replayable, pass-counting stream.

mod estimate;
mod schedule;
mod sieve;
mod stream;

pub use estimate::{estimate_lambda, retention_cap, LambdaEstimate};
pub use schedule::ThresholdSchedule;
pub use sieve::{
    run_sieve, run_sieve_estimated, sieve, sieve_or_max, sieve_plus_max, thresholding_stage,
    SieveParams, SieveState, SieveVariant,
};
pub use stream::{read_stream_file, write_stream_file, ElementStream, Pass};
