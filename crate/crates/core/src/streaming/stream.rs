use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Lines, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::instance::{Element, ElementId};

#[derive(Debug, Clone)]
enum Source {
    Memory(Vec<Element>),
    File(PathBuf),
}

/// A replayable element stream that counts full traversals.
///
/// Every pass yields the elements in the same order. The file-backed form
/// reads one `id<TAB>cost` record per line; blank lines and lines starting
/// with `#` are skipped.
#[derive(Debug, Clone)]
pub struct ElementStream {
    source: Source,
    passes: u32,
}

impl ElementStream {
    pub fn from_elements(elements: Vec<Element>) -> Self {
        Self {
            source: Source::Memory(elements),
            passes: 0,
        }
    }

    pub fn from_file(path: impl Into<PathBuf>) -> Self {
        Self {
            source: Source::File(path.into()),
            passes: 0,
        }
    }

    /// Number of passes started so far.
    pub fn passes(&self) -> u32 {
        self.passes
    }

    /// Starts a new pass.
    pub fn pass(&mut self) -> Result<Pass<'_>> {
        self.passes += 1;
        Ok(match &self.source {
            Source::Memory(v) => Pass::Memory(v.iter()),
            Source::File(path) => Pass::File {
                lines: BufReader::new(File::open(path)?).lines(),
                path,
                line: 0,
            },
        })
    }

    /// Reads the whole stream without counting a pass.
    pub fn collect_elements(&self) -> Result<Vec<Element>> {
        match &self.source {
            Source::Memory(v) => Ok(v.clone()),
            Source::File(path) => read_stream_file(path),
        }
    }
}

pub enum Pass<'a> {
    Memory(std::slice::Iter<'a, Element>),
    File {
        lines: Lines<BufReader<File>>,
        path: &'a Path,
        line: usize,
    },
}

impl Iterator for Pass<'_> {
    type Item = Result<Element>;

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            Pass::Memory(it) => it.next().copied().map(Ok),
            Pass::File { lines, path, line } => loop {
                *line += 1;
                let text = match lines.next()? {
                    Ok(t) => t,
                    Err(e) => return Some(Err(e.into())),
                };
                let trimmed = text.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    continue;
                }
                return Some(parse_record(trimmed).map_err(|message| Error::Parse {
                    path: path.to_path_buf(),
                    line: *line,
                    message,
                }));
            },
        }
    }
}

fn parse_record(line: &str) -> std::result::Result<Element, String> {
    let mut fields = line.split('\t');
    let (Some(id), Some(cost), None) = (fields.next(), fields.next(), fields.next()) else {
        return Err(format!("expected `id<TAB>cost`, got {line:?}"));
    };
    let id: ElementId = id
        .trim()
        .parse()
        .map_err(|e| format!("bad id {id:?}: {e}"))?;
    let cost: f64 = cost
        .trim()
        .parse()
        .map_err(|e| format!("bad cost {cost:?}: {e}"))?;
    if !(cost.is_finite() && cost >= 0.0) {
        return Err(format!("cost must be non-negative and finite, got {cost}"));
    }
    Ok(Element::new(id, cost))
}

pub fn read_stream_file(path: &Path) -> Result<Vec<Element>> {
    let mut stream = ElementStream::from_file(path);
    let pass = stream.pass()?;
    pass.collect()
}

/// Writes `elements` in the stream file format. Costs use Rust's shortest
/// round-trip float formatting, so reading the file back is lossless.
pub fn write_stream_file(path: &Path, elements: &[Element]) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for e in elements {
        writeln!(out, "{}\t{}", e.id, e.cost)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_are_counted_and_replay_in_order() {
        let els = vec![Element::new(2, 1.0), Element::new(0, 1.5)];
        let mut s = ElementStream::from_elements(els.clone());
        for _ in 0..3 {
            let got: Vec<Element> = s.pass().unwrap().map(Result::unwrap).collect();
            assert_eq!(got, els);
        }
        assert_eq!(s.passes(), 3);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("stream.tsv");
        let els = vec![Element::new(7, 1.1), Element::new(3, 2.0 / 3.0)];
        write_stream_file(&path, &els).unwrap();
        let mut s = ElementStream::from_file(&path);
        let got: Vec<Element> = s.pass().unwrap().map(Result::unwrap).collect();
        assert_eq!(got, els);
        assert_eq!(s.passes(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.tsv");
        std::fs::write(&path, "# header\n1\t1.0\n2 1.0\n").unwrap();
        let err = read_stream_file(&path).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }
}
