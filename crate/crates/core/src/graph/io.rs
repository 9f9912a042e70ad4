//! Readers for edge-list, METIS and Matrix Market files, plus an edge-list writer.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use log::warn;

use super::{Graph, GraphBuilder, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// `u v [w]` per line, `#` starts a comment.
    EdgeList,
    /// METIS adjacency format with 1-based ids.
    Metis,
    /// Matrix Market coordinate format, symmetric.
    MatrixMarket,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "edgelist" | "edge-list" | "el" => Ok(Format::EdgeList),
            "metis" | "graph" => Ok(Format::Metis),
            "mtx" | "matrix-market" | "mm" => Ok(Format::MatrixMarket),
            other => Err(Error::InvalidConfig(format!("unknown graph format '{other}'"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::EdgeList => "edgelist",
            Format::Metis => "metis",
            Format::MatrixMarket => "mtx",
        })
    }
}

/// A parsed graph together with the external name of every vertex.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[v]` is the id of vertex `v` as written in the input file.
    /// METIS and Matrix Market ids are shifted to 0-based.
    pub labels: Vec<String>,
    /// Number of duplicate edge records folded into an existing edge.
    pub merged_duplicates: usize,
}

pub fn load_graph(path: impl AsRef<Path>, format: Format) -> Result<LoadedGraph> {
    let file = File::open(path.as_ref())?;
    read_graph(BufReader::new(file), format)
}

pub fn read_graph<R: BufRead>(reader: R, format: Format) -> Result<LoadedGraph> {
    let loaded = match format {
        Format::EdgeList => read_edge_list(reader)?,
        Format::Metis => read_metis(reader)?,
        Format::MatrixMarket => read_matrix_market(reader)?,
    };
    if loaded.merged_duplicates > 0 {
        warn!(
            "merged {} duplicate edge records by summing weights",
            loaded.merged_duplicates
        );
    }
    Ok(loaded)
}

fn parse_weight(token: &str, line: usize) -> Result<f64> {
    let weight: f64 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid weight '{token}'")))?;
    if !(weight > 0.0 && weight.is_finite()) {
        return Err(Error::NonPositiveWeight { line, weight });
    }
    Ok(weight)
}

fn parse_index(token: &str, line: usize, n: usize) -> Result<VertexId> {
    let id: usize = token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid vertex id '{token}'")))?;
    if id == 0 || id > n {
        return Err(Error::parse(line, format!("vertex id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

fn identity_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn read_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut records: Vec<(VertexId, VertexId, f64)> = Vec::new();

    let mut intern = |token: &str, labels: &mut Vec<String>| -> VertexId {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len();
        ids.insert(token.to_owned(), id);
        labels.push(token.to_owned());
        id
    };

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let content = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        let (u, v, w) = match fields.as_slice() {
            [] => continue,
            [u, v] => (*u, *v, 1.0),
            [u, v, w] => (*u, *v, parse_weight(w, lineno)?),
            _ => {
                return Err(Error::parse(
                    lineno,
                    format!("expected 'u v [w]', found {} fields", fields.len()),
                ))
            }
        };
        let u = intern(u, &mut labels);
        let v = intern(v, &mut labels);
        records.push((u, v, w));
    }

    let mut builder = GraphBuilder::with_capacity(labels.len(), records.len());
    for (u, v, w) in records {
        builder.add_edge(u, v, w)?;
    }
    let (graph, merged_duplicates) = builder.build();
    Ok(LoadedGraph {
        graph,
        labels,
        merged_duplicates,
    })
}

/// Lines with content, skipping `%` comments, tagged with 1-based line numbers.
fn content_lines<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = std::io::Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)))
        .filter(|r| !matches!(r, Ok((_, l)) if l.trim_start().starts_with('%')))
}

fn read_metis<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut lines = content_lines(reader);
    let (header_line, header) = loop {
        match lines.next() {
            None => return Err(Error::EmptyInput),
            Some(r) => {
                let (no, l) = r?;
                if !l.trim().is_empty() {
                    break (no, l);
                }
            }
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 4 {
        return Err(Error::parse(header_line, "expected header 'n M [fmt [ncon]]'"));
    }
    let parse_count = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::parse(header_line, format!("invalid count '{s}'")))
    };
    let n = parse_count(fields[0])?;
    let declared_edges = parse_count(fields[1])?;
    let fmt = fields.get(2).copied().unwrap_or("0");
    if fmt.len() > 3 || !fmt.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::parse(header_line, format!("invalid fmt '{fmt}'")));
    }
    let fmt = format!("{fmt:0>3}");
    let has_sizes = fmt.as_bytes()[0] == b'1';
    let has_vertex_weights = fmt.as_bytes()[1] == b'1';
    let has_edge_weights = fmt.as_bytes()[2] == b'1';
    let ncon = match fields.get(3) {
        Some(s) => parse_count(s)?,
        None if has_vertex_weights => 1,
        None => 0,
    };
    let skip = usize::from(has_sizes) + if has_vertex_weights { ncon } else { 0 };

    // (min, max, weight, listed from the min side)
    let mut entries: Vec<(VertexId, VertexId, f64, bool)> = Vec::new();
    let mut vertex = 0usize;
    for r in lines {
        let (lineno, line) = r?;
        if vertex == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::parse(lineno, format!("more than {n} vertex lines")));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() < skip {
            return Err(Error::parse(lineno, "missing vertex size or weights"));
        }
        let rest = &tokens[skip..];
        let stride = if has_edge_weights { 2 } else { 1 };
        if rest.len() % stride != 0 {
            return Err(Error::parse(lineno, "neighbor without edge weight"));
        }
        for chunk in rest.chunks(stride) {
            let nb = parse_index(chunk[0], lineno, n)?;
            let w = if has_edge_weights {
                parse_weight(chunk[1], lineno)?
            } else {
                1.0
            };
            entries.push((vertex.min(nb), vertex.max(nb), w, vertex <= nb));
        }
        vertex += 1;
    }
    if vertex < n {
        return Err(Error::parse(
            header_line,
            format!("header declares {n} vertices, found {vertex} vertex lines"),
        ));
    }

    // Each edge is listed from both endpoints. Take the entries listed from the
    // lower endpoint, falling back to the other side for one-sided listings.
    entries.sort_by_key(|e| (e.0, e.1, !e.3));
    let mut builder = GraphBuilder::with_capacity(n, entries.len() / 2 + 1);
    let mut one_sided = 0usize;
    let mut i = 0;
    while i < entries.len() {
        let (u, v, _, _) = entries[i];
        let mut j = i;
        while j < entries.len() && entries[j].0 == u && entries[j].1 == v {
            j += 1;
        }
        let group = &entries[i..j];
        let forward = group.iter().any(|e| e.3);
        if u != v && !(forward && group.iter().any(|e| !e.3)) {
            one_sided += 1;
        }
        for e in group.iter().filter(|e| e.3 == forward) {
            builder.add_edge(u, v, e.2)?;
        }
        i = j;
    }
    if one_sided > 0 {
        warn!("{one_sided} METIS edges were listed by only one endpoint");
    }
    let (graph, merged_duplicates) = builder.build();
    if graph.num_edges() != declared_edges {
        warn!(
            "METIS header declares {declared_edges} edges, found {}",
            graph.num_edges()
        );
    }
    Ok(LoadedGraph {
        labels: identity_labels(n),
        graph,
        merged_duplicates,
    })
}

fn read_matrix_market<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut lines = reader.lines().enumerate();
    let banner = match lines.next() {
        None => return Err(Error::EmptyInput),
        Some((_, l)) => l?,
    };
    let tokens: Vec<String> = banner
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::parse(1, "missing '%%MatrixMarket matrix' banner"));
    }
    if tokens[2] != "coordinate" {
        return Err(Error::parse(1, "only coordinate matrices are supported"));
    }
    let pattern = match tokens[3].as_str() {
        "pattern" => true,
        "real" | "integer" => false,
        other => return Err(Error::parse(1, format!("unsupported field '{other}'"))),
    };
    if tokens[4] != "symmetric" {
        return Err(Error::parse(
            1,
            format!("unsupported symmetry '{}', expected symmetric", tokens[4]),
        ));
    }

    let mut size: Option<(usize, usize)> = None;
    let mut builder = GraphBuilder::new(0);
    let mut seen = 0usize;
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match size {
            None => {
                let dims: Vec<usize> = fields
                    .iter()
                    .map(|f| f.parse())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::parse(lineno, "invalid size line"))?;
                let [rows, cols, nnz] = dims[..] else {
                    return Err(Error::parse(lineno, "expected 'rows cols entries'"));
                };
                if rows != cols {
                    return Err(Error::parse(lineno, "adjacency matrix must be square"));
                }
                builder = GraphBuilder::with_capacity(rows, nnz);
                size = Some((rows, nnz));
            }
            Some((n, _)) => {
                let expected = if pattern { 2 } else { 3 };
                if fields.len() != expected {
                    return Err(Error::parse(
                        lineno,
                        format!("expected {expected} fields, found {}", fields.len()),
                    ));
                }
                let u = parse_index(fields[0], lineno, n)?;
                let v = parse_index(fields[1], lineno, n)?;
                let w = if pattern {
                    1.0
                } else {
                    parse_weight(fields[2], lineno)?
                };
                builder.add_edge(u, v, w)?;
                seen += 1;
            }
        }
    }
    let Some((n, nnz)) = size else {
        return Err(Error::EmptyInput);
    };
    if seen != nnz {
        warn!("Matrix Market size line declares {nnz} entries, found {seen}");
    }
    let (graph, merged_duplicates) = builder.build();
    Ok(LoadedGraph {
        graph,
        labels: identity_labels(n),
        merged_duplicates,
    })
}

/// Writes `g` as an edge list, one `u v w` line per undirected edge. When
/// `labels` is given, vertex `v` is written as `labels[v]`.
pub fn write_edge_list<W: Write>(g: &Graph, labels: Option<&[String]>, mut out: W) -> Result<()> {
    writeln!(
        out,
        "# {} vertices, {} edges",
        g.num_vertices(),
        g.num_edges()
    )?;
    for (u, v, w) in g.edges() {
        match labels {
            Some(l) => writeln!(out, "{} {} {}", l[u], l[v], w)?,
            None => writeln!(out, "{u} {v} {w}")?,
        }
    }
    out.flush()?;
    Ok(())
}

/// Writes one `vertex community` line per vertex. Vertex `v` is written as
/// `labels[v]` when labels are given.
pub fn write_assignment<W: Write>(
    assignment: &[usize],
    labels: Option<&[String]>,
    mut out: W,
) -> Result<()> {
    for (v, c) in assignment.iter().enumerate() {
        match labels {
            Some(l) => writeln!(out, "{} {c}", l[v])?,
            None => writeln!(out, "{v} {c}")?,
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads `vertex community` lines, keeping file order. `#` starts a comment.
pub fn read_assignment<R: BufRead>(reader: R) -> Result<Vec<(String, String)>> {
    let mut rows = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let content = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [v, c] => {
                if let Some(first) = seen.insert((*v).to_owned(), lineno) {
                    return Err(Error::parse(
                        lineno,
                        format!("vertex '{v}' already assigned on line {first}"),
                    ));
                }
                rows.push(((*v).to_owned(), (*c).to_owned()));
            }
            _ => return Err(Error::parse(lineno, "expected 'vertex community'")),
        }
    }
    Ok(rows)
}
