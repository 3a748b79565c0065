use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetKind {
    SnapEdgelist,
    MovielensCsv,
    /// Random coverage graph generated from the seed.
    Synthetic,
    /// The three-item modular instance on which Greedy+Max is tight.
    TightExample,
}

impl FromStr for DatasetKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "snap-edgelist" => Ok(Self::SnapEdgelist),
            "movielens-csv" => Ok(Self::MovielensCsv),
            "synthetic" => Ok(Self::Synthetic),
            "tight-example" => Ok(Self::TightExample),
            _ => Err(format!(
                "unknown dataset kind {s:?} (snap-edgelist, movielens-csv, synthetic, tight-example)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Greedy,
    GreedyOrMax,
    GreedyPlusMax,
    PartialEnum,
    Sieve,
    SieveOrMax,
    SievePlusMax,
    DistributedSievePlusMax,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Greedy,
        Algorithm::GreedyOrMax,
        Algorithm::GreedyPlusMax,
        Algorithm::PartialEnum,
        Algorithm::Sieve,
        Algorithm::SieveOrMax,
        Algorithm::SievePlusMax,
        Algorithm::DistributedSievePlusMax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::GreedyOrMax => "greedy_or_max",
            Algorithm::GreedyPlusMax => "greedy_plus_max",
            Algorithm::PartialEnum => "partial_enum",
            Algorithm::Sieve => "sieve",
            Algorithm::SieveOrMax => "sieve_or_max",
            Algorithm::SievePlusMax => "sieve_plus_max",
            Algorithm::DistributedSievePlusMax => "distributed_sieve_plus_max",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// One experiment: a dataset, a list of algorithms and a sweep over `K`.
///
/// The file format is one `key = value` pair per line, with `#` comments.
/// Lists are comma separated. Relative paths are resolved against the
/// directory of the config file.
///
/// ```text
/// name = facebook
/// kind = snap-edgelist
/// dataset = data/facebook_combined.txt
/// algorithms = greedy, greedy_plus_max, sieve_plus_max
/// k = 5, 10, 20
/// epsilon = 0.1
/// output = results.csv
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub kind: DatasetKind,
    pub dataset: Option<PathBuf>,
    pub algorithms: Vec<Algorithm>,
    pub k_values: Vec<f64>,
    pub epsilon: f64,
    pub epsilon_est: f64,
    /// Partial enumeration depth.
    pub d: usize,
    pub seed: u64,
    /// Query budget per cell.
    pub budget: u64,
    pub iterations: usize,
    pub output: Option<PathBuf>,
    /// Truncation for MovieLens data.
    pub max_movies: Option<usize>,
    pub max_users: Option<usize>,
    /// Size of synthetic graphs.
    pub synthetic_vertices: usize,
    pub synthetic_avg_degree: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            name: "experiment".into(),
            kind: DatasetKind::TightExample,
            dataset: None,
            algorithms: Vec::new(),
            k_values: Vec::new(),
            epsilon: 0.1,
            epsilon_est: 1.0 / 6.0,
            d: 1,
            seed: 0,
            budget: 100_000_000,
            iterations: 1,
            output: None,
            max_movies: None,
            max_users: None,
            synthetic_vertices: 1000,
            synthetic_avg_degree: 8.0,
        }
    }
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base).map_err(|(line, message)| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        })
    }

    /// Parses config text; errors carry the offending line number.
    pub fn parse(text: &str, base: &Path) -> std::result::Result<Self, (usize, String)> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err((line, format!("expected `key = value`, got {content:?}")));
            };
            let (key, value) = (key.trim(), value.trim());
            cfg.set(key, value, base).map_err(|m| (line, m))?;
        }
        cfg.validate().map_err(|m| (0, m))?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str, base: &Path) -> std::result::Result<(), String> {
        fn num<T: FromStr>(key: &str, v: &str) -> std::result::Result<T, String>
        where
            T::Err: fmt::Display,
        {
            v.parse().map_err(|e| format!("bad value for {key}: {v:?} ({e})"))
        }
        let list = || value.split(',').map(str::trim).filter(|s| !s.is_empty());
        match key {
            "name" => self.name = value.to_string(),
            "kind" => self.kind = value.parse()?,
            "dataset" => self.dataset = Some(base.join(value)),
            "algorithms" => {
                self.algorithms = list().map(str::parse).collect::<std::result::Result<_, _>>()?
            }
            "k" => {
                self.k_values = list()
                    .map(|v| num::<f64>(key, v))
                    .collect::<std::result::Result<_, _>>()?
            }
            "epsilon" => self.epsilon = num(key, value)?,
            "epsilon_est" => self.epsilon_est = num(key, value)?,
            "d" => self.d = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "budget" => self.budget = num(key, value)?,
            "iterations" => self.iterations = num(key, value)?,
            "output" => self.output = Some(base.join(value)),
            "max_movies" => self.max_movies = Some(num(key, value)?),
            "max_users" => self.max_users = Some(num(key, value)?),
            "vertices" => self.synthetic_vertices = num(key, value)?,
            "avg_degree" => self.synthetic_avg_degree = num(key, value)?,
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if let Some(k) = self.k_values.iter().find(|&&k| !(k.is_finite() && k > 0.0)) {
            return Err(format!("K values must be positive, got {k}"));
        }
        if self.budget == 0 {
            return Err("budget must be positive".into());
        }
        if !(self.epsilon > 0.0) {
            return Err(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if self.iterations == 0 {
            return Err("iterations must be at least 1".into());
        }
        let needs_file = matches!(self.kind, DatasetKind::SnapEdgelist | DatasetKind::MovielensCsv);
        if needs_file && self.dataset.is_none() {
            return Err("this dataset kind needs a `dataset` path".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let text = "\
# sweep
name = fb
kind = snap-edgelist
dataset = data/fb.txt
algorithms = greedy, greedy_plus_max,sieve_plus_max
k = 5, 10.5
epsilon = 0.2   # trailing comment
d = 2
seed = 7
budget = 1000
iterations = 3
output = out.csv
";
        let cfg = ExperimentConfig::parse(text, Path::new("/cfg")).unwrap();
        assert_eq!(cfg.kind, DatasetKind::SnapEdgelist);
        assert_eq!(cfg.dataset, Some(PathBuf::from("/cfg/data/fb.txt")));
        assert_eq!(
            cfg.algorithms,
            vec![Algorithm::Greedy, Algorithm::GreedyPlusMax, Algorithm::SievePlusMax]
        );
        assert_eq!(cfg.k_values, vec![5.0, 10.5]);
        assert_eq!(cfg.epsilon, 0.2);
        assert_eq!((cfg.d, cfg.seed, cfg.budget, cfg.iterations), (2, 7, 1000, 3));
    }

    #[test]
    fn errors_point_at_the_line() {
        let err = ExperimentConfig::parse("kind = tight-example\nk = 2, x\n", Path::new("")).unwrap_err();
        assert_eq!(err.0, 2);
        let err = ExperimentConfig::parse("colour = red\n", Path::new("")).unwrap_err();
        assert_eq!(err.0, 1);
        assert!(ExperimentConfig::parse("k = -1\n", Path::new("")).is_err());
        assert!(ExperimentConfig::parse("kind = snap-edgelist\n", Path::new("")).is_err());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
    }
}
