use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Dist, DistanceMatrix, Graph, INF};

const INF_TOKEN: &str = "INF";

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Vertex count declared by a `# n=<N>` header comment, if this is one.
fn declared_n(comment: &str, line: usize) -> Result<Option<usize>> {
    let Some(first) = comment.split_whitespace().next() else {
        return Ok(None);
    };
    match first.strip_prefix("n=") {
        None => Ok(None),
        Some(raw) => raw
            .parse()
            .map(Some)
            .map_err(|_| parse_error(line, format!("bad vertex count `{raw}`"))),
    }
}

/// Reads an edge list: one edge per line as two whitespace-separated 0-based
/// ids. `#` starts a comment. A leading `# n=<N>` comment fixes the vertex
/// count; otherwise it is one more than the largest id.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut declared = None;
    let mut edges = Vec::new();
    let mut max_id = None;
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let (data, comment) = match line.split_once('#') {
            Some((data, comment)) => (data, Some(comment)),
            None => (line.as_str(), None),
        };
        if let Some(comment) = comment {
            if declared.is_none() && edges.is_empty() && data.trim().is_empty() {
                declared = declared_n(comment, line_no)?;
            }
        }
        let mut tokens = data.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        let second = tokens
            .next()
            .ok_or_else(|| parse_error(line_no, "expected two vertex ids"))?;
        if let Some(extra) = tokens.next() {
            return Err(parse_error(line_no, format!("unexpected token `{extra}`")));
        }
        let mut id = |tok: &str| -> Result<usize> {
            let v: usize = tok
                .parse()
                .map_err(|_| parse_error(line_no, format!("`{tok}` is not a vertex id")))?;
            if v > u32::MAX as usize - 1 {
                return Err(parse_error(line_no, format!("vertex id {v} out of range")));
            }
            if let Some(n) = declared {
                if v >= n {
                    return Err(parse_error(
                        line_no,
                        format!("vertex id {v} out of range for n = {n}"),
                    ));
                }
            }
            max_id = max_id.max(Some(v));
            Ok(v)
        };
        let u = id(first)?;
        let v = id(second)?;
        edges.push((u, v));
    }
    let n = declared.unwrap_or(max_id.map_or(0, |m| m + 1));
    Graph::from_edges(n, edges)
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    read_edge_list(BufReader::new(File::open(path)?))
}

/// Writes `# n=<N> m=<M>` followed by one `u v` line per edge with `u < v`.
pub fn write_edge_list<W: Write>(g: &Graph, mut writer: W) -> Result<()> {
    writeln!(writer, "# n={} m={}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(writer, "{u} {v}")?;
    }
    writer.flush()?;
    Ok(())
}

pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write_edge_list(g, BufWriter::new(File::create(path)?))
}

/// Writes a square estimate matrix as header-less CSV, `INF` for unreachable.
pub fn write_estimates<W: Write>(est: &DistanceMatrix, writer: W) -> Result<()> {
    let mut out = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    for row in est.rows() {
        out.write_record(row.iter().map(|&d| {
            if d == INF {
                INF_TOKEN.to_string()
            } else {
                d.to_string()
            }
        }))?;
    }
    out.flush()?;
    Ok(())
}

pub fn save_estimates(est: &DistanceMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_estimates(est, BufWriter::new(File::create(path)?))
}

/// Reads a square estimate matrix written by [`write_estimates`].
pub fn read_estimates<R: Read>(reader: R) -> Result<DistanceMatrix> {
    let mut input = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut data = Vec::new();
    let mut width = None;
    for (i, record) in input.records().enumerate() {
        let line = i + 1;
        let record = record?;
        if *width.get_or_insert(record.len()) != record.len() {
            return Err(parse_error(
                line,
                format!(
                    "expected {} entries, found {}",
                    width.unwrap(),
                    record.len()
                ),
            ));
        }
        for field in &record {
            let d: Dist = if field == INF_TOKEN {
                INF
            } else {
                match field.parse() {
                    Ok(d) if d != INF => d,
                    _ => return Err(parse_error(line, format!("`{field}` is not a distance"))),
                }
            };
            data.push(d);
        }
    }
    let n = width.unwrap_or(0);
    if data.len() != n * n {
        return Err(Error::dims((data.len() / n.max(1), n), (n, n)));
    }
    Ok(DistanceMatrix::from_rows(
        (0..n).collect(),
        (0..n).collect(),
        data,
    ))
}

pub fn load_estimates(path: impl AsRef<Path>) -> Result<DistanceMatrix> {
    read_estimates(BufReader::new(File::open(path)?))
}
