//! Objective functions: the coverage and movie-recommendation objectives
//! used in the experiments, plus modular and adversarial test objectives.

mod coverage;
mod hidden_pair;
mod modular;
mod movie;

pub use coverage::{coverage_costs, CoverageObjective, DEFAULT_COST_OFFSET};
pub use hidden_pair::{HiddenPairObjective, HiddenPairVariant};
pub use modular::ModularObjective;
pub use movie::{movie_costs, MovieObjective, RatingVectors};
