use std::path::PathBuf;

use thiserror::Error;

use crate::instance::ElementId;

/// Errors produced by instance construction, oracle access and the algorithms.
#[derive(Debug, Error)]
pub enum Error {
    #[error("oracle queried an infeasible set: cost {cost} exceeds capacity {capacity}")]
    InfeasibleQuery { cost: f64, capacity: f64 },

    #[error("element {0} is not part of the instance")]
    UnknownElement(ElementId),

    #[error("duplicate element id {0}")]
    DuplicateId(ElementId),

    #[error("invalid capacity {0}: must be positive and finite")]
    InvalidCapacity(f64),

    #[error("invalid cost {cost} for element {id}: must be non-negative and finite")]
    InvalidCost { id: ElementId, cost: f64 },

    #[error("instance has no element that fits and an empty base set")]
    EmptyInstance,

    #[error("brute force refused: {n} elements exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("query budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("invalid lambda {0}: must be positive and finite")]
    InvalidLambda(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("machine {machine} received {load} elements in round {round}, memory cap is {cap}")]
    MemoryCapExceeded {
        round: usize,
        machine: usize,
        load: usize,
        cap: usize,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("no usable data in {0}")]
    EmptyData(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
