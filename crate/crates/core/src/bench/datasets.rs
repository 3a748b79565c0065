use std::fmt;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bench::config::{DatasetKind, ExperimentConfig};
use crate::bench::ingest::{ingest_movielens, ingest_snap, MovieData};
use crate::error::{Error, Result};
use crate::instance::{normalize, Element, ElementId, Instance};
use crate::objectives::{
    coverage_costs, movie_costs, CoverageObjective, ModularObjective, MovieObjective,
    DEFAULT_COST_OFFSET,
};
use crate::oracle::Objective;

/// An objective together with the raw costs of its ground set.
pub struct LoadedDataset {
    pub name: String,
    pub objective: Box<dyn Objective>,
    pub elements: Vec<Element>,
}

impl fmt::Debug for LoadedDataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LoadedDataset")
            .field("name", &self.name)
            .field("elements", &self.elements.len())
            .finish()
    }
}

impl LoadedDataset {
    /// Coverage objective with degree-based costs.
    pub fn coverage(name: impl Into<String>, adjacency: Vec<Vec<u32>>) -> Self {
        let costs = coverage_costs(&adjacency, DEFAULT_COST_OFFSET);
        Self {
            name: name.into(),
            elements: with_costs(&costs),
            objective: Box::new(CoverageObjective::new(adjacency)),
        }
    }

    /// Movie objective over the whole catalog with value-proportional costs.
    pub fn movies(name: impl Into<String>, data: &MovieData) -> Self {
        let objective = MovieObjective::new(&data.ratings, None);
        let costs = movie_costs(&objective);
        Self {
            name: name.into(),
            elements: with_costs(&costs),
            objective: Box::new(objective),
        }
    }

    /// Items 1, 2, 3 worth 0.5, 0.5, 0.6 and costing 1, 1, 1.1.
    pub fn tight_example() -> Self {
        Self {
            name: "tight-example".into(),
            elements: vec![
                Element::new(1, 1.0),
                Element::new(2, 1.0),
                Element::new(3, 1.1),
            ],
            objective: Box::new(ModularObjective::from_pairs(&[(1, 0.5), (2, 0.5), (3, 0.6)])),
        }
    }

    /// Coverage objective on a random graph where every vertex links to
    /// `avg_degree / 2` random others, so degrees (and costs) stay within a
    /// small factor of each other.
    pub fn synthetic(vertices: usize, avg_degree: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let out_degree = ((avg_degree / 2.0).round() as usize).max(1);
        let adjacency = random_out_degree_graph(vertices, out_degree, &mut rng);
        Self::coverage(format!("synthetic-n{vertices}-s{seed}"), adjacency)
    }

    pub fn load(config: &ExperimentConfig) -> Result<Self> {
        let path = config.dataset.as_deref();
        let name = |p: &Path| {
            p.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| config.name.clone())
        };
        match config.kind {
            DatasetKind::TightExample => Ok(Self::tight_example()),
            DatasetKind::Synthetic => Ok(Self::synthetic(
                config.synthetic_vertices,
                config.synthetic_avg_degree,
                config.seed,
            )),
            DatasetKind::SnapEdgelist => {
                let path = path.ok_or_else(|| Error::InvalidParameter("missing dataset path".into()))?;
                Ok(Self::coverage(name(path), ingest_snap(path)?.adjacency))
            }
            DatasetKind::MovielensCsv => {
                let path = path.ok_or_else(|| Error::InvalidParameter("missing dataset path".into()))?;
                let data = ingest_movielens(path, config.max_movies, config.max_users)?;
                Ok(Self::movies(name(path), &data))
            }
        }
    }

    /// Normalized instance with capacity `k` in raw cost units.
    pub fn instance(&self, k: f64) -> Result<Instance> {
        normalize(self.elements.clone(), k)
    }
}

fn with_costs(costs: &[f64]) -> Vec<Element> {
    costs
        .iter()
        .enumerate()
        .map(|(i, &c)| Element::new(i as ElementId, c))
        .collect()
}

/// Uniform random simple graph with `round(n·avg_degree/2)` edges
/// (capped at the number of vertex pairs).
pub fn random_graph<R: Rng + ?Sized>(n: usize, avg_degree: f64, rng: &mut R) -> Vec<Vec<u32>> {
    let mut adjacency = vec![Vec::new(); n];
    if n < 2 {
        return adjacency;
    }
    let pairs = n * (n - 1) / 2;
    let target = ((n as f64 * avg_degree / 2.0).round() as usize).min(pairs);
    let mut seen = std::collections::HashSet::with_capacity(target);
    while seen.len() < target {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u != v && seen.insert((u.min(v), u.max(v))) {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
    }
    adjacency
}

/// Random simple graph in which every vertex picks `out_degree` distinct
/// random neighbors; the minimum degree is `out_degree` when `n` allows it.
pub fn random_out_degree_graph<R: Rng + ?Sized>(
    n: usize,
    out_degree: usize,
    rng: &mut R,
) -> Vec<Vec<u32>> {
    let mut adjacency = vec![Vec::new(); n];
    let d = out_degree.min(n.saturating_sub(1));
    for u in 0..n {
        for v in rand::seq::index::sample(rng, n - 1, d) {
            // skip u itself by shifting the upper range
            let v = if v >= u { v + 1 } else { v };
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
        }
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
        nbrs.dedup();
    }
    adjacency
}

/// Shape and cost statistics of a dataset file.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSummary {
    pub kind: DatasetKind,
    pub elements: usize,
    /// Edges for graphs, ratings for MovieLens.
    pub records: usize,
    /// Isolated vertices, or movies with zero singleton value.
    pub degenerate: usize,
    pub min_cost: f64,
    pub max_cost: f64,
    pub all_finite: bool,
}

impl DatasetSummary {
    /// Costs at least 1 and every value finite.
    pub fn is_valid(&self) -> bool {
        self.elements > 0 && self.min_cost >= 1.0 && self.all_finite
    }
}

impl fmt::Display for DatasetSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (what, recs, degen) = match self.kind {
            DatasetKind::MovielensCsv => ("movies", "ratings", "zero-value movies"),
            _ => ("vertices", "edges", "isolated vertices"),
        };
        writeln!(f, "{what}: {}", self.elements)?;
        writeln!(f, "{recs}: {}", self.records)?;
        writeln!(f, "{degen}: {}", self.degenerate)?;
        writeln!(f, "cost range: [{}, {}]", self.min_cost, self.max_cost)?;
        write!(f, "finite: {}", self.all_finite)
    }
}

/// Ingests `path` (MovieLens when the first record line is the rating
/// header, a SNAP edge list otherwise) and summarizes it.
pub fn verify_dataset(path: &Path) -> Result<DatasetSummary> {
    let first = BufReader::new(std::fs::File::open(path)?)
        .lines()
        .map_while(std::result::Result::ok)
        .find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let is_movielens = first.is_some_and(|l| l.trim_start().starts_with("userId"));

    let (kind, dataset, records, degenerate, finite) = if is_movielens {
        let data = ingest_movielens(path, None, None)?;
        let finite = data
            .ratings
            .vectors
            .iter()
            .flatten()
            .all(|&(_, v)| v.is_finite());
        let ds = LoadedDataset::movies("verify", &data);
        let zero = (0..ds.elements.len() as ElementId)
            .filter(|&x| ds.objective.value(&[x]) <= 0.0)
            .count();
        (DatasetKind::MovielensCsv, ds, data.n_ratings, zero, finite)
    } else {
        let g = ingest_snap(path)?;
        let edges = g.n_edges();
        let isolated = g.adjacency.iter().filter(|n| n.is_empty()).count();
        (
            DatasetKind::SnapEdgelist,
            LoadedDataset::coverage("verify", g.adjacency),
            edges,
            isolated,
            true,
        )
    };
    let costs = dataset.elements.iter().map(|e| e.cost);
    let min_cost = costs.clone().reduce(f64::min).unwrap_or(0.0);
    let max_cost = costs.clone().reduce(f64::max).unwrap_or(0.0);
    Ok(DatasetSummary {
        kind,
        elements: dataset.elements.len(),
        records,
        degenerate,
        min_cost,
        max_cost,
        all_finite: finite && dataset.elements.iter().all(|e| e.cost.is_finite()),
    })
}
