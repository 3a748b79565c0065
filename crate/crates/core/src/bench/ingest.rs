use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::objectives::RatingVectors;

/// Undirected simple graph read from a SNAP edge list.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapGraph {
    /// Sorted neighbor lists over compacted ids `0..|V|`.
    pub adjacency: Vec<Vec<u32>>,
    /// `original_ids[v]` is the id vertex `v` had in the file.
    pub original_ids: Vec<u64>,
}

impl SnapGraph {
    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Writes `compact<TAB>original` lines.
    pub fn write_id_map(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "# compact\toriginal")?;
        for (v, orig) in self.original_ids.iter().enumerate() {
            writeln!(out, "{v}\t{orig}")?;
        }
        out.flush()?;
        Ok(())
    }
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Reads `u v` pairs, one per line; `#` lines and blank lines are skipped.
///
/// Self-loops are dropped, repeated edges merged and vertex ids compacted
/// in increasing order of their original value.
pub fn ingest_snap(path: &Path) -> Result<SnapGraph> {
    let reader = BufReader::new(File::open(path)?);
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut fields = text.split_whitespace();
        let (Some(u), Some(v)) = (fields.next(), fields.next()) else {
            return Err(parse_error(path, i + 1, format!("expected two vertex ids, got {text:?}")));
        };
        let parse = |s: &str| {
            s.parse::<u64>()
                .map_err(|e| parse_error(path, i + 1, format!("bad vertex id {s:?}: {e}")))
        };
        edges.push((parse(u)?, parse(v)?));
    }

    let mut compact: BTreeMap<u64, u32> = BTreeMap::new();
    for &(u, v) in &edges {
        compact.insert(u, 0);
        compact.insert(v, 0);
    }
    for (k, slot) in compact.values_mut().enumerate() {
        *slot = k as u32;
    }
    let mut adjacency = vec![Vec::new(); compact.len()];
    for (u, v) in edges {
        if u == v {
            continue;
        }
        let (a, b) = (compact[&u], compact[&v]);
        adjacency[a as usize].push(b);
        adjacency[b as usize].push(a);
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
        nbrs.dedup();
    }
    Ok(SnapGraph {
        adjacency,
        original_ids: compact.into_keys().collect(),
    })
}

/// Rating-deviation vectors read from a MovieLens ratings file.
#[derive(Debug, Clone, PartialEq)]
pub struct MovieData {
    pub ratings: RatingVectors,
    /// Original MovieLens id of every kept movie, in element order.
    pub movie_ids: Vec<u64>,
    /// Original id of every kept user, indexed by the user slot in the vectors.
    pub user_ids: Vec<u64>,
    /// Mean over every rating in the file.
    pub global_mean: f64,
    pub n_ratings: usize,
}

#[derive(Debug, Deserialize)]
struct RatingRecord {
    #[serde(rename = "userId")]
    user: u64,
    #[serde(rename = "movieId")]
    movie: u64,
    rating: f64,
    #[allow(dead_code)]
    timestamp: i64,
}

/// Reads a `userId,movieId,rating,timestamp` CSV.
///
/// Deviations are taken from the mean of all ratings in the file. With
/// limits, only the `max_movies` most-rated movies and the `max_users`
/// most-active users are kept (ties go to the smaller id).
pub fn ingest_movielens(
    path: &Path,
    max_movies: Option<usize>,
    max_users: Option<usize>,
) -> Result<MovieData> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let expected = ["userId", "movieId", "rating", "timestamp"];
    if headers.iter().map(str::trim).ne(expected) {
        return Err(parse_error(
            path,
            1,
            format!("expected header {}, got {:?}", expected.join(","), headers),
        ));
    }

    let mut records = Vec::new();
    for (i, row) in reader.deserialize::<RatingRecord>().enumerate() {
        let r = row.map_err(|e| {
            let line = e.position().map_or(i + 2, |p| p.line() as usize);
            parse_error(path, line, e.to_string())
        })?;
        if !r.rating.is_finite() {
            return Err(parse_error(path, i + 2, format!("rating {} is not finite", r.rating)));
        }
        records.push(r);
    }
    if records.is_empty() {
        return Err(Error::EmptyData(path.to_path_buf()));
    }
    let n_ratings = records.len();
    let global_mean = records.iter().map(|r| r.rating).sum::<f64>() / n_ratings as f64;

    let movie_ids = most_frequent(records.iter().map(|r| r.movie), max_movies);
    let user_ids = most_frequent(records.iter().map(|r| r.user), max_users);
    let movie_slot: HashMap<u64, usize> = movie_ids.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let user_slot: HashMap<u64, u32> = user_ids
        .iter()
        .enumerate()
        .map(|(k, &u)| (u, k as u32))
        .collect();

    let mut vectors = vec![Vec::new(); movie_ids.len()];
    for r in &records {
        if let (Some(&m), Some(&u)) = (movie_slot.get(&r.movie), user_slot.get(&r.user)) {
            vectors[m].push((u, r.rating - global_mean));
        }
    }
    Ok(MovieData {
        ratings: RatingVectors::new(vectors),
        movie_ids,
        user_ids,
        global_mean,
        n_ratings,
    })
}

/// Distinct keys, most frequent first (smaller key on ties), truncated to
/// `limit`, then sorted by key.
fn most_frequent(keys: impl Iterator<Item = u64>, limit: Option<usize>) -> Vec<u64> {
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for k in keys {
        *counts.entry(k).or_default() += 1;
    }
    let mut ranked: Vec<(u64, usize)> = counts.into_iter().collect();
    if let Some(limit) = limit {
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked.truncate(limit);
    }
    let mut kept: Vec<u64> = ranked.into_iter().map(|(k, _)| k).collect();
    kept.sort_unstable();
    kept
}

/// Default location of the id map written next to an ingested edge list.
pub fn id_map_path(graph_path: &Path) -> PathBuf {
    let mut name = graph_path.file_name().unwrap_or_default().to_os_string();
    name.push(".idmap");
    graph_path.with_file_name(name)
}
