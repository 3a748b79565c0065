use crate::instance::ElementId;
use crate::oracle::Objective;

/// Sparse per-movie rating-deviation vectors: `vectors[x]` holds
/// `(user, r_{x,u} − r_avg)` pairs sorted by user.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RatingVectors {
    pub vectors: Vec<Vec<(u32, f64)>>,
}

impl RatingVectors {
    pub fn new(mut vectors: Vec<Vec<(u32, f64)>>) -> Self {
        for v in &mut vectors {
            v.sort_by_key(|&(u, _)| u);
        }
        Self { vectors }
    }

    /// Builds deviation vectors from a dense rating matrix where `None`
    /// means "not rated", centering on the mean of all given ratings.
    pub fn from_dense(ratings: &[Vec<Option<f64>>]) -> Self {
        let given: Vec<f64> = ratings.iter().flatten().flatten().copied().collect();
        let mean = if given.is_empty() {
            0.0
        } else {
            given.iter().sum::<f64>() / given.len() as f64
        };
        let vectors = ratings
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(u, r)| r.map(|r| (u as u32, r - mean)))
                    .collect()
            })
            .collect();
        Self { vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dot(&self, a: usize, b: usize) -> f64 {
        let (va, vb) = (&self.vectors[a], &self.vectors[b]);
        let (mut i, mut j, mut acc) = (0, 0, 0.0);
        while i < va.len() && j < vb.len() {
            match va[i].0.cmp(&vb[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += va[i].1 * vb[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

/// `f_X(Z) = Σ_{x∈X} max(0, max_{z∈Z} ⟨v_z, v_x⟩)`.
///
/// Element ids are movie indices into the rating vectors. Similarities to
/// the targets are precomputed into a dense `movies × targets` table.
#[derive(Debug, Clone)]
pub struct MovieObjective {
    n_movies: usize,
    targets: Vec<u32>,
    similarity: Vec<f64>,
}

impl MovieObjective {
    /// Target set `X` defaults to the whole catalog.
    pub fn new(ratings: &RatingVectors, targets: Option<Vec<u32>>) -> Self {
        let n_movies = ratings.len();
        let targets = targets.unwrap_or_else(|| (0..n_movies as u32).collect());
        let width = targets.len();
        let mut similarity = vec![0.0; n_movies * width];
        for z in 0..n_movies {
            for (k, &x) in targets.iter().enumerate() {
                similarity[z * width + k] = ratings.dot(z, x as usize);
            }
        }
        Self {
            n_movies,
            targets,
            similarity,
        }
    }

    pub fn n_movies(&self) -> usize {
        self.n_movies
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }

    pub fn similarity(&self, z: u32, target_index: usize) -> f64 {
        self.similarity[z as usize * self.targets.len() + target_index]
    }
}

impl Objective for MovieObjective {
    fn value(&self, set: &[ElementId]) -> f64 {
        let width = self.targets.len();
        let rows: Vec<&[f64]> = set
            .iter()
            .filter(|&&z| (z as usize) < self.n_movies)
            .map(|&z| &self.similarity[z as usize * width..(z as usize + 1) * width])
            .collect();
        (0..width)
            .map(|k| rows.iter().map(|r| r[k]).fold(0.0, f64::max))
            .sum()
    }
}

/// Costs proportional to singleton values, scaled so the cheapest movie with
/// positive value costs 1. Movies of value zero cost 1.
pub fn movie_costs(objective: &MovieObjective) -> Vec<f64> {
    let values: Vec<f64> = (0..objective.n_movies() as ElementId)
        .map(|x| objective.value(&[x]))
        .collect();
    let min_positive = values
        .iter()
        .copied()
        .filter(|&v| v > 0.0)
        .fold(f64::INFINITY, f64::min);
    values
        .iter()
        .map(|&v| if v > 0.0 { v / min_positive } else { 1.0 })
        .collect()
}
