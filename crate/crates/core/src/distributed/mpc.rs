use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Memory multiplier used by [`MpcConfig::for_instance`].
pub const DEFAULT_MEMORY_FACTOR: f64 = 8.0;

/// Shape of the simulated cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MpcConfig {
    pub machines: usize,
    /// Most distinct elements one machine may hold in a round.
    pub memory_cap: usize,
    pub seed: u64,
}

impl MpcConfig {
    /// `m = round(√(n/K̃))` machines with `8·√(n·K̃)` memory each.
    pub fn for_instance(n: usize, k_tilde: usize, seed: u64) -> Self {
        Self::with_memory_factor(n, k_tilde, seed, DEFAULT_MEMORY_FACTOR)
    }

    pub fn with_memory_factor(n: usize, k_tilde: usize, seed: u64, factor: f64) -> Self {
        let n_f = n.max(1) as f64;
        let k_f = k_tilde.max(1) as f64;
        let machines = ((n_f / k_f).sqrt().round() as usize).max(1);
        let cap = (factor * (n_f * k_f).sqrt()).ceil() as usize;
        Self {
            machines,
            memory_cap: cap.max(n.div_ceil(machines)),
            seed,
        }
    }

    pub fn machines(mut self, machines: usize) -> Self {
        self.machines = machines.max(1);
        self
    }

    pub fn memory_cap(mut self, cap: usize) -> Self {
        self.memory_cap = cap;
        self
    }

    /// RNG for `round`, independent of how machines are scheduled.
    pub fn round_rng(&self, round: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(round as u64);
        rng
    }
}

/// Runs one synchronous round: checks every machine's load against the
/// memory cap, then runs the machines (possibly in parallel) and returns
/// their outputs in machine order.
pub fn simulate_round<I, O, F>(
    round: usize,
    inputs: Vec<I>,
    load: impl Fn(&I) -> usize,
    memory_cap: usize,
    machine: F,
) -> Result<Vec<O>>
where
    I: Send,
    O: Send,
    F: Fn(usize, I) -> Result<O> + Sync,
{
    for (i, input) in inputs.iter().enumerate() {
        let l = load(input);
        if l > memory_cap {
            return Err(Error::MemoryCapExceeded {
                round,
                machine: i,
                load: l,
                cap: memory_cap,
            });
        }
    }
    inputs
        .into_par_iter()
        .enumerate()
        .map(|(i, input)| machine(i, input))
        .collect()
}

/// One thresholding round as seen by the central machine.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub round: usize,
    pub threshold: f64,
    pub gamma_size: usize,
    /// `|X_i \ T|` per machine.
    pub sent: Vec<usize>,
    pub central_received: usize,
    /// `|T|` after the central filter.
    pub t_size: usize,
    pub max_load: usize,
    pub queries: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    round: usize,
    t: f64,
    gamma_size: usize,
    sent_total: usize,
    #[serde(rename = "T_size")]
    t_size: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RoundLog {
    pub rounds: Vec<RoundRecord>,
    /// Queries spent before the first round.
    pub setup_queries: u64,
    /// Queries of the final augmentation round, greedy ordering included.
    pub augmentation_queries: u64,
}

impl RoundLog {
    pub fn max_central_received(&self) -> usize {
        self.rounds.iter().map(|r| r.central_received).max().unwrap_or(0)
    }

    pub fn total_queries(&self) -> u64 {
        self.setup_queries
            + self.augmentation_queries
            + self.rounds.iter().map(|r| r.queries).sum::<u64>()
    }

    /// CSV with columns `round,t,gamma_size,sent_total,T_size`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rounds {
            w.serialize(CsvRow {
                round: r.round,
                t: r.threshold,
                gamma_size: r.gamma_size,
                sent_total: r.central_received,
                t_size: r.t_size,
            })?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_shape() {
        let c = MpcConfig::for_instance(10_000, 10, 1);
        assert_eq!(c.machines, 32);
        assert_eq!(c.memory_cap, 2530);
        assert!(c.machines * c.memory_cap >= 10_000);
        assert_eq!(MpcConfig::for_instance(3, 5, 0).machines, 1);
        assert_eq!(MpcConfig::for_instance(0, 0, 0).machines, 1);
    }

    #[test]
    fn single_machine_empty_input() {
        let out: Vec<Vec<u32>> =
            simulate_round(0, vec![Vec::<u32>::new()], |v| v.len(), 4, |_, v| Ok(v)).unwrap();
        assert_eq!(out, vec![Vec::<u32>::new()]);
    }

    #[test]
    fn outputs_stay_in_machine_order() {
        let inputs: Vec<usize> = (0..16).collect();
        let out = simulate_round(0, inputs, |_| 1, 1, |i, x| Ok((i, x * 2))).unwrap();
        for (i, &(m, v)) in out.iter().enumerate() {
            assert_eq!((m, v), (i, 2 * i));
        }
    }

    #[test]
    fn memory_cap_is_enforced() {
        let err = simulate_round(3, vec![vec![1u32], vec![1, 2, 3]], |v| v.len(), 2, |_, v| Ok(v))
            .unwrap_err();
        assert!(matches!(
            err,
            Error::MemoryCapExceeded {
                round: 3,
                machine: 1,
                load: 3,
                cap: 2
            }
        ));
    }

    #[test]
    fn round_rngs_are_reproducible_and_distinct() {
        use rand::Rng;
        let c = MpcConfig::for_instance(100, 4, 9);
        let a: u64 = c.round_rng(2).gen();
        let b: u64 = c.round_rng(2).gen();
        let other: u64 = c.round_rng(3).gen();
        assert_eq!(a, b);
        assert_ne!(a, other);
    }

    #[test]
    fn csv_columns() {
        let log = RoundLog {
            rounds: vec![RoundRecord {
                round: 1,
                threshold: 0.5,
                gamma_size: 3,
                sent: vec![1, 2],
                central_received: 3,
                t_size: 2,
                max_load: 7,
                queries: 10,
            }],
            ..RoundLog::default()
        };
        let mut buf = Vec::new();
        log.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "round,t,gamma_size,sent_total,T_size\n1,0.5,3,3,2\n"
        );
    }
}
