use std::cell::RefCell;

use crate::instance::ElementId;
use crate::oracle::Objective;

/// Offset `α` in the degree-based cost rule.
pub const DEFAULT_COST_OFFSET: f64 = 1.0 / 20.0;

/// Neighborhood coverage `f(Z) = |Z ∪ N(Z)| / |V|` of an undirected graph.
/// Element ids are vertex ids.
#[derive(Debug, Clone)]
pub struct CoverageObjective {
    adjacency: Vec<Vec<u32>>,
}

thread_local! {
    // (stamp per vertex, current epoch)
    static MARKS: RefCell<(Vec<u32>, u32)> = const { RefCell::new((Vec::new(), 0)) };
}

impl CoverageObjective {
    /// `adjacency[v]` lists the neighbors of `v`. Edges are made symmetric,
    /// self-loops and duplicates removed.
    pub fn new(mut adjacency: Vec<Vec<u32>>) -> Self {
        let n = adjacency.len();
        let mut extra: Vec<(u32, u32)> = Vec::new();
        for (v, nbrs) in adjacency.iter().enumerate() {
            for &u in nbrs {
                assert!((u as usize) < n, "neighbor {u} out of range");
                extra.push((u, v as u32));
            }
        }
        for (u, v) in extra {
            adjacency[u as usize].push(v);
        }
        for (v, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.retain(|&u| u as usize != v);
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Self { adjacency }
    }

    /// Builds the graph from an undirected edge list over `n` vertices.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            adjacency[u as usize].push(v);
        }
        Self::new(adjacency)
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// `|Z ∪ N(Z)|`.
    pub fn covered(&self, set: &[ElementId]) -> usize {
        let n = self.adjacency.len();
        MARKS.with(|cell| {
            let mut guard = cell.borrow_mut();
            let (marks, epoch) = &mut *guard;
            if marks.len() != n {
                marks.clear();
                marks.resize(n, 0);
                *epoch = 0;
            }
            *epoch = epoch.wrapping_add(1);
            if *epoch == 0 {
                marks.iter_mut().for_each(|m| *m = 0);
                *epoch = 1;
            }
            let stamp = *epoch;
            let mut count = 0;
            let mut mark = |v: u32| {
                let m = &mut marks[v as usize];
                if *m != stamp {
                    *m = stamp;
                    count += 1;
                }
            };
            for &z in set {
                if (z as usize) >= n {
                    continue;
                }
                mark(z);
                for &u in &self.adjacency[z as usize] {
                    mark(u);
                }
            }
            count
        })
    }
}

impl Objective for CoverageObjective {
    fn value(&self, set: &[ElementId]) -> f64 {
        if self.adjacency.is_empty() {
            return 0.0;
        }
        self.covered(set) as f64 / self.adjacency.len() as f64
    }
}

/// Degree-based costs `c(v) = β/|V| · (|N(v)| − α)` with `β` chosen so the
/// cheapest non-isolated vertex costs exactly 1. Isolated vertices get cost 1.
pub fn coverage_costs(adjacency: &[Vec<u32>], alpha: f64) -> Vec<f64> {
    let min_degree = adjacency
        .iter()
        .map(Vec::len)
        .filter(|&d| d > 0)
        .min();
    let Some(min_degree) = min_degree else {
        return vec![1.0; adjacency.len()];
    };
    let denom = min_degree as f64 - alpha;
    adjacency
        .iter()
        .map(|nbrs| {
            if nbrs.is_empty() {
                1.0
            } else {
                (nbrs.len() as f64 - alpha) / denom
            }
        })
        .collect()
}
