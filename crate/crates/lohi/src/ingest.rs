//! File ingestion: edge lists, label files, feature CSVs, the k-NN builder,
//! and the edge-list/DOT writers.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// On-disk layout of an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeListFormat {
    /// Tokens separated by runs of whitespace.
    Whitespace,
    /// Tokens separated by commas.
    Csv,
}

impl EdgeListFormat {
    /// Picks a format from a file extension: `.csv` means comma-separated,
    /// anything else whitespace.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => EdgeListFormat::Csv,
            _ => EdgeListFormat::Whitespace,
        }
    }
}

/// What an edge-list read found and dropped.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct IngestionReport {
    /// Nodes discovered.
    pub nodes: usize,
    /// Edge lines parsed.
    pub edges_read: usize,
    /// Edges surviving self-loop and duplicate removal.
    pub edges_kept: usize,
    /// `(i, i)` lines dropped.
    pub self_loops_dropped: usize,
    /// Repeated pairs dropped (either orientation).
    pub duplicates_dropped: usize,
    /// Lines that carried a weight column; weights are read and discarded.
    pub weights_discarded: usize,
    /// Integers in `0..=max` never mentioned by the file, added as isolated
    /// nodes (all-numeric namespaces only).
    pub isolated_added: usize,
}

impl IngestionReport {
    /// Human-readable warnings the caller should surface; empty when the file
    /// was clean.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.weights_discarded > 0 {
            out.push(format!(
                "{} weighted edges: weights read and discarded, graph is unweighted",
                self.weights_discarded
            ));
        }
        if self.self_loops_dropped > 0 {
            out.push(format!("{} self-loops dropped", self.self_loops_dropped));
        }
        if self.duplicates_dropped > 0 {
            out.push(format!("{} duplicate edges dropped", self.duplicates_dropped));
        }
        if self.isolated_added > 0 {
            out.push(format!(
                "{} integers inside the numeric node range never appear in an edge; kept as isolated nodes",
                self.isolated_added
            ));
        }
        out
    }
}

/// A graph whose nodes keep the names they had on disk. Ids are dense and
/// assigned by first appearance in the file.
#[derive(Debug, Clone)]
pub struct NamedGraph {
    /// The structure.
    pub graph: Graph,
    /// Name of each node, indexed by id.
    pub names: Vec<String>,
    index: HashMap<String, u32>,
}

impl NamedGraph {
    /// Wraps a graph whose names are just the stringified ids, as produced by
    /// the k-NN builder and the sampler.
    pub fn from_anonymous(graph: Graph) -> Self {
        let names: Vec<String> = (0..graph.node_count()).map(|i| i.to_string()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        NamedGraph { graph, names, index }
    }

    /// Id of a node name, if present.
    pub fn id(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }
}

fn tokens<'a>(line: &'a str, format: EdgeListFormat) -> Vec<&'a str> {
    match format {
        EdgeListFormat::Whitespace => line.split_whitespace().collect(),
        EdgeListFormat::Csv => {
            let t: Vec<&str> = line.split(',').map(str::trim).collect();
            if t.len() == 1 && t[0].is_empty() {
                Vec::new()
            } else {
                t
            }
        }
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads an edge list. Blank lines and lines starting with `#` are skipped;
/// each remaining line names two endpoints, with an optional third column
/// holding a weight that is read and discarded (counted in the report).
/// Node ids are dense, assigned by first appearance.
///
/// When every name is an unsigned integer the file describes the node set
/// `0..=max`: values it never mentions become isolated nodes (appended after
/// the named ones, ascending, and counted in the report).
pub fn read_edge_list(path: &Path, format: EdgeListFormat) -> Result<(NamedGraph, IngestionReport)> {
    let text = read_to_string(path)?;
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut report = IngestionReport::default();

    let intern = |name: &str, names: &mut Vec<String>, index: &mut HashMap<String, u32>| -> u32 {
        if let Some(&id) = index.get(name) {
            return id;
        }
        let id = names.len() as u32;
        names.push(name.to_string());
        index.insert(name.to_string(), id);
        id
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let t = tokens(line, format);
        if t.len() < 2 {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: lineno + 1,
                message: format!("expected two endpoints, got {:?}", line),
            });
        }
        if t.len() >= 3 {
            let w = t[2];
            if w.parse::<f64>().is_err() {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    message: format!("third column {w:?} is not a numeric weight"),
                });
            }
            report.weights_discarded += 1;
        }
        let a = intern(t[0], &mut names, &mut index);
        let b = intern(t[1], &mut names, &mut index);
        pairs.push((a, b));
        report.edges_read += 1;
    }

    if pairs.is_empty() {
        return Err(Error::NoEdges {
            path: path.to_path_buf(),
        });
    }

    let numeric: Option<Vec<u32>> = names.iter().map(|s| s.parse::<u32>().ok()).collect();
    if let Some(values) = numeric {
        let max = values.iter().copied().max().expect("pairs is non-empty");
        let mut seen = vec![false; max as usize + 1];
        for &v in &values {
            seen[v as usize] = true;
        }
        for v in 0..=max {
            if !seen[v as usize] {
                let name = v.to_string();
                index.insert(name.clone(), names.len() as u32);
                names.push(name);
                report.isolated_added += 1;
            }
        }
    }

    let (graph, dropped) = Graph::new(names.len(), pairs)?;
    report.nodes = graph.node_count();
    report.edges_kept = graph.edge_count();
    report.self_loops_dropped = dropped.self_loops;
    report.duplicates_dropped = dropped.duplicates;
    Ok((NamedGraph { graph, names, index }, report))
}

/// Reads node labels for a graph and remaps the raw label values to `1..=q`
/// by first appearance.
///
/// Two layouts are accepted and auto-detected:
/// * two tokens per line, `name label`, in any order, every node covered;
/// * one token per line, the label of node `i` on line `i` in id order.
///
/// Returns the dense labels and `q`.
pub fn read_labels(path: &Path, graph: &NamedGraph) -> Result<(Vec<u32>, u32)> {
    let text = read_to_string(path)?;
    let mut lines: Vec<(usize, Vec<&str>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        lines.push((lineno + 1, line.split_whitespace().collect()));
    }

    let n = graph.graph.node_count();
    let mut remap: HashMap<String, u32> = HashMap::new();
    let mut next = 0u32;
    let dense = |value: &str, remap: &mut HashMap<String, u32>, next: &mut u32| -> u32 {
        *remap.entry(value.to_string()).or_insert_with(|| {
            *next += 1;
            *next
        })
    };

    let one_token = lines.iter().all(|(_, t)| t.len() == 1);
    let labels: Vec<u32> = if one_token {
        if lines.len() != n {
            return Err(Error::LabelCount {
                expected: n,
                got: lines.len(),
            });
        }
        lines
            .iter()
            .map(|(_, t)| dense(t[0], &mut remap, &mut next))
            .collect()
    } else {
        let mut by_node: Vec<Option<u32>> = vec![None; n];
        for (lineno, t) in &lines {
            if t.len() != 2 {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: *lineno,
                    message: format!("expected `name label`, got {} tokens", t.len()),
                });
            }
            let id = graph.id(t[0]).ok_or_else(|| Error::UnknownNode {
                name: t[0].to_string(),
            })? as usize;
            if by_node[id].is_some() {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: *lineno,
                    message: format!("duplicate label for node {:?}", t[0]),
                });
            }
            by_node[id] = Some(dense(t[1], &mut remap, &mut next));
        }
        by_node
            .iter()
            .enumerate()
            .map(|(id, l)| {
                l.ok_or_else(|| Error::MissingLabel {
                    name: graph.names[id].clone(),
                })
            })
            .collect::<Result<_>>()?
    };

    let q = next;
    if q < 2 {
        return Err(Error::TooFewStates { got: q });
    }
    Ok((labels, q))
}

/// A numeric feature table with one class column peeled off and remapped to
/// dense labels.
#[derive(Debug, Clone)]
pub struct FeatureMatrix {
    /// One row per sample.
    pub rows: Vec<Vec<f64>>,
    /// Feature column names, class column excluded.
    pub columns: Vec<String>,
    /// Dense class labels in `1..=q`, by first appearance of the raw value.
    pub labels: Vec<u32>,
    /// Raw class values, indexed by dense label minus one.
    pub class_names: Vec<String>,
    /// Number of distinct classes.
    pub q: u32,
}

/// Reads a headered CSV of numeric features plus one class column (matched by
/// name). Class values may be arbitrary strings; features must be finite
/// numbers.
pub fn read_feature_csv(path: &Path, class_column: &str) -> Result<FeatureMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| csv_error(path, e))?
        .iter()
        .map(str::to_string)
        .collect();
    let class_idx = headers
        .iter()
        .position(|h| h == class_column)
        .ok_or_else(|| Error::MissingColumn {
            name: class_column.to_string(),
            available: headers.clone(),
        })?;
    let columns: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != class_idx)
        .map(|(_, h)| h.clone())
        .collect();

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<u32> = Vec::new();
    let mut class_names: Vec<String> = Vec::new();
    let mut remap: HashMap<String, u32> = HashMap::new();

    for (recno, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let row_no = recno + 1;
        if record.len() != headers.len() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: row_no + 1,
                message: format!("expected {} fields, got {}", headers.len(), record.len()),
            });
        }
        let mut row = Vec::with_capacity(columns.len());
        for (i, field) in record.iter().enumerate() {
            if i == class_idx {
                let label = *remap.entry(field.to_string()).or_insert_with(|| {
                    class_names.push(field.to_string());
                    class_names.len() as u32
                });
                labels.push(label);
            } else {
                let value: f64 = field.parse().map_err(|_| Error::Parse {
                    path: path.to_path_buf(),
                    line: row_no + 1,
                    message: format!("{:?} is not a number (column {:?})", field, headers[i]),
                })?;
                if !value.is_finite() {
                    return Err(Error::NonFiniteFeature {
                        row: row_no,
                        column: headers[i].clone(),
                    });
                }
                row.push(value);
            }
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(Error::NoEdges {
            path: path.to_path_buf(),
        });
    }
    let q = class_names.len() as u32;
    if q < 2 {
        return Err(Error::TooFewStates { got: q });
    }
    Ok(FeatureMatrix {
        rows,
        columns,
        labels,
        class_names,
        q,
    })
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.kind() {
        csv::ErrorKind::Io(_) => {
            let io_err = match e.into_kind() {
                csv::ErrorKind::Io(io_err) => io_err,
                _ => unreachable!(),
            };
            Error::Io {
                path: path.to_path_buf(),
                source: io_err,
            }
        }
        _ => Error::Parse {
            path: path.to_path_buf(),
            line: e
                .position()
                .map(|p| p.line() as usize)
                .unwrap_or(0),
            message: e.to_string(),
        },
    }
}

/// Distance used by [`build_knn_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    /// Straight-line distance; neighbor ranking uses the squared form.
    Euclidean,
    /// Sum of absolute coordinate differences.
    Manhattan,
}

/// Builds the undirected k-nearest-neighbor graph of a feature matrix.
///
/// With `standardize`, every column is z-scored first (population standard
/// deviation; constant columns scale by 1). Each sample contributes edges to
/// its `k` nearest others, ranked by `(distance, index)` so exact ties break
/// toward the lower id, and the directed lists are merged by union. The edge
/// count therefore lands in `[ceil(nk/2), nk]`.
pub fn build_knn_graph(
    rows: &[Vec<f64>],
    k: usize,
    standardize: bool,
    distance: Distance,
) -> Result<Graph> {
    let n = rows.len();
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    if k >= n {
        return Err(Error::KTooLarge { k, n });
    }
    let d = rows[0].len();
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidConfig(
            "feature rows must be non-empty and of equal length".into(),
        ));
    }

    let data: Vec<Vec<f64>> = if standardize {
        let mut means = vec![0.0; d];
        for row in rows {
            for (m, x) in means.iter_mut().zip(row) {
                *m += x;
            }
        }
        for m in &mut means {
            *m /= n as f64;
        }
        let mut vars = vec![0.0; d];
        for row in rows {
            for ((v, x), m) in vars.iter_mut().zip(row).zip(&means) {
                let c = x - m;
                *v += c * c;
            }
        }
        let sds: Vec<f64> = vars
            .iter()
            .map(|v| {
                let sd = (v / n as f64).sqrt();
                if sd > 0.0 {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        rows.iter()
            .map(|row| {
                row.iter()
                    .zip(&means)
                    .zip(&sds)
                    .map(|((x, m), sd)| (x - m) / sd)
                    .collect()
            })
            .collect()
    } else {
        rows.to_vec()
    };

    let dist = |a: &[f64], b: &[f64]| -> f64 {
        match distance {
            Distance::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| {
                    let c = x - y;
                    c * c
                })
                .sum(),
            Distance::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        }
    };

    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(n * k);
    let mut cand: Vec<(f64, u32)> = Vec::with_capacity(n - 1);
    for i in 0..n {
        cand.clear();
        for j in 0..n {
            if j != i {
                cand.push((dist(&data[i], &data[j]), j as u32));
            }
        }
        cand.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, j) in &cand[..k] {
            pairs.push((i as u32, j));
        }
    }

    let (graph, _) = Graph::new(n, pairs)?;
    Ok(graph)
}

fn io_err(path: &Path, source: io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes a graph as a name-pair edge list, one edge per line in canonical
/// order.
pub fn write_edge_list(w: &mut impl Write, graph: &Graph, names: &[String]) -> io::Result<()> {
    for &(a, b) in graph.edges() {
        writeln!(w, "{} {}", names[a as usize], names[b as usize])?;
    }
    Ok(())
}

/// Writes `name label` lines in id order.
pub fn write_labels(w: &mut impl Write, names: &[String], labels: &[u32]) -> io::Result<()> {
    for (name, label) in names.iter().zip(labels) {
        writeln!(w, "{name} {label}")?;
    }
    Ok(())
}

/// Writes a Graphviz rendering. Nodes are filled from the `set312` color
/// scheme, cycling when `q` exceeds its 12 entries, and carry `name (label)`
/// captions.
pub fn write_dot(
    w: &mut impl Write,
    graph: &Graph,
    names: &[String],
    labels: &[u32],
) -> io::Result<()> {
    writeln!(w, "graph lohi {{")?;
    writeln!(w, "    node [style=filled, colorscheme=set312];")?;
    for (name, &label) in names.iter().zip(labels) {
        let color = (label - 1) % 12 + 1;
        writeln!(
            w,
            "    \"{}\" [label=\"{} ({})\", fillcolor={}];",
            name, name, label, color
        )?;
    }
    for &(a, b) in graph.edges() {
        writeln!(w, "    \"{}\" -- \"{}\";", names[a as usize], names[b as usize])?;
    }
    writeln!(w, "}}")
}

/// Path-based convenience over [`write_edge_list`].
pub fn write_edge_list_file(path: &Path, graph: &Graph, names: &[String]) -> Result<()> {
    let mut f = io::BufWriter::new(fs::File::create(path).map_err(|e| io_err(path, e))?);
    write_edge_list(&mut f, graph, names).map_err(|e| io_err(path, e))
}

/// Path-based convenience over [`write_dot`].
pub fn write_dot_file(path: &Path, graph: &Graph, names: &[String], labels: &[u32]) -> Result<()> {
    let mut f = io::BufWriter::new(fs::File::create(path).map_err(|e| io_err(path, e))?);
    write_dot(&mut f, graph, names, labels).map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("lohi-ingest-tests");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("{}-{}", std::process::id(), name));
        let mut f = fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn edge_list_first_appearance_ids() {
        let p = temp_file("basic.edges", "# comment\nb a\nc b\n\na c\n");
        let (g, report) = read_edge_list(&p, EdgeListFormat::Whitespace).unwrap();
        assert_eq!(g.names, vec!["b", "a", "c"]);
        assert_eq!(g.graph.edge_count(), 3);
        assert_eq!(report.edges_read, 3);
        assert_eq!(report.weights_discarded, 0);
        assert!(report.warnings().is_empty());
    }

    #[test]
    fn numeric_namespace_fills_range_gaps() {
        let p = temp_file("gaps.edges", "0 3\n3 5\n");
        let (g, report) = read_edge_list(&p, EdgeListFormat::Whitespace).unwrap();
        // Named nodes keep first-appearance ids; the gaps 1, 2, 4 are
        // appended ascending as isolated nodes.
        assert_eq!(g.names, vec!["0", "3", "5", "1", "2", "4"]);
        assert_eq!(g.graph.degree(3).unwrap(), 0);
        assert_eq!(report.isolated_added, 3);
        assert_eq!(report.warnings().len(), 1);
    }

    #[test]
    fn non_numeric_names_are_never_materialized() {
        let p = temp_file("letters-gap.edges", "0 2\n2 x\n");
        let (g, report) = read_edge_list(&p, EdgeListFormat::Whitespace).unwrap();
        assert_eq!(g.names, vec!["0", "2", "x"]);
        assert_eq!(report.isolated_added, 0);
    }

    #[test]
    fn weights_are_discarded_and_counted() {
        let p = temp_file("weighted.edges", "a b 2.5\nb c 1\na c\n");
        let (g, report) = read_edge_list(&p, EdgeListFormat::Whitespace).unwrap();
        assert_eq!(g.graph.edge_count(), 3);
        assert_eq!(report.weights_discarded, 2);
        assert_eq!(report.warnings().len(), 1);
    }

    #[test]
    fn bad_weight_is_a_parse_error() {
        let p = temp_file("badweight.edges", "a b heavy\n");
        let err = read_edge_list(&p, EdgeListFormat::Whitespace).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn csv_edges_parse() {
        let p = temp_file("edges.csv", "a, b\nb,c , 3.0\n");
        let (g, report) = read_edge_list(&p, EdgeListFormat::Csv).unwrap();
        assert_eq!(g.graph.edge_count(), 2);
        assert_eq!(report.weights_discarded, 1);
    }

    #[test]
    fn single_token_line_rejected() {
        let p = temp_file("short.edges", "a b\nc\n");
        let err = read_edge_list(&p, EdgeListFormat::Whitespace).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn loops_and_duplicates_reported() {
        let p = temp_file("dups.edges", "a a\na b\nb a\na b\n");
        let (g, report) = read_edge_list(&p, EdgeListFormat::Whitespace).unwrap();
        assert_eq!(g.graph.edge_count(), 1);
        assert_eq!(report.self_loops_dropped, 1);
        assert_eq!(report.duplicates_dropped, 2);
    }

    #[test]
    fn empty_file_is_no_edges() {
        let p = temp_file("empty.edges", "# nothing here\n");
        assert!(matches!(
            read_edge_list(&p, EdgeListFormat::Whitespace),
            Err(Error::NoEdges { .. })
        ));
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            EdgeListFormat::from_path(Path::new("x/y.CSV")),
            EdgeListFormat::Csv
        );
        assert_eq!(
            EdgeListFormat::from_path(Path::new("x/y.edges")),
            EdgeListFormat::Whitespace
        );
    }

    fn named_abc() -> NamedGraph {
        let p = temp_file("abc.edges", "a b\nb c\n");
        read_edge_list(&p, EdgeListFormat::Whitespace).unwrap().0
    }

    #[test]
    fn labels_name_value_form() {
        let g = named_abc();
        let p = temp_file("abc.labels", "a x\nb x\nc y\n");
        let (labels, q) = read_labels(&p, &g).unwrap();
        assert_eq!(labels, vec![1, 1, 2]);
        assert_eq!(q, 2);
    }

    #[test]
    fn labels_line_order_form() {
        let g = named_abc();
        let p = temp_file("abc2.labels", "2\n7\n2\n");
        let (labels, q) = read_labels(&p, &g).unwrap();
        assert_eq!(labels, vec![1, 2, 1]);
        assert_eq!(q, 2);
    }

    #[test]
    fn labels_out_of_file_order() {
        let g = named_abc();
        let p = temp_file("abc3.labels", "c red\na blue\nb red\n");
        let (labels, q) = read_labels(&p, &g).unwrap();
        // red seen first so it becomes 1; node order is a, b, c.
        assert_eq!(labels, vec![2, 1, 1]);
        assert_eq!(q, 2);
    }

    #[test]
    fn label_errors() {
        let g = named_abc();
        let missing = temp_file("m.labels", "a x\nb y\n");
        assert!(matches!(
            read_labels(&missing, &g),
            Err(Error::MissingLabel { .. })
        ));
        let unknown = temp_file("u.labels", "a x\nb y\nz x\n");
        assert!(matches!(
            read_labels(&unknown, &g),
            Err(Error::UnknownNode { .. })
        ));
        let count = temp_file("c.labels", "1\n2\n");
        assert!(matches!(
            read_labels(&count, &g),
            Err(Error::LabelCount { expected: 3, got: 2 })
        ));
        let mono = temp_file("q.labels", "x\nx\nx\n");
        assert!(matches!(
            read_labels(&mono, &g),
            Err(Error::TooFewStates { got: 1 })
        ));
        let dup = temp_file("d.labels", "a x\na y\nb x\nc y\n");
        assert!(matches!(read_labels(&dup, &g), Err(Error::Parse { .. })));
    }

    #[test]
    fn feature_csv_roundtrip() {
        let p = temp_file(
            "feat.csv",
            "f1,class,f2\n1.0,setosa,2.0\n3.0,setosa,4.0\n5.0,other,6.0\n",
        );
        let m = read_feature_csv(&p, "class").unwrap();
        assert_eq!(m.columns, vec!["f1", "f2"]);
        assert_eq!(m.rows, vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]);
        assert_eq!(m.labels, vec![1, 1, 2]);
        assert_eq!(m.class_names, vec!["setosa", "other"]);
        assert_eq!(m.q, 2);
    }

    #[test]
    fn feature_csv_errors() {
        let p = temp_file("feat2.csv", "f1,class\n1.0,a\n2.0,b\n");
        assert!(matches!(
            read_feature_csv(&p, "target"),
            Err(Error::MissingColumn { .. })
        ));
        let bad = temp_file("feat3.csv", "f1,class\noops,a\n1.0,b\n");
        assert!(matches!(read_feature_csv(&bad, "class"), Err(Error::Parse { line: 2, .. })));
        let inf = temp_file("feat4.csv", "f1,class\ninf,a\n1.0,b\n");
        assert!(matches!(
            read_feature_csv(&inf, "class"),
            Err(Error::NonFiniteFeature { row: 1, .. })
        ));
    }

    #[test]
    fn knn_square_plus_outlier() {
        // Four corners of a unit square and a far-away point: with k=1 the
        // outlier attaches to its nearest corner, corners pair up.
        let rows = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
            vec![10.0, 10.0],
        ];
        let g = build_knn_graph(&rows, 1, false, Distance::Euclidean).unwrap();
        // Ties at distance 1 break to the lower index: 1->0, 2->0, 3->1.
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3), (3, 4)]);
    }

    #[test]
    fn knn_edge_count_bounds() {
        let rows: Vec<Vec<f64>> = (0..12)
            .map(|i| vec![(i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()])
            .collect();
        for k in 1..6 {
            let g = build_knn_graph(&rows, k, true, Distance::Euclidean).unwrap();
            let lo = (12 * k).div_ceil(2);
            assert!(g.edge_count() >= lo && g.edge_count() <= 12 * k);
        }
    }

    #[test]
    fn knn_standardization_changes_geometry() {
        // The large-scale second coordinate dominates raw distances, so node 0
        // pairs with 2; once z-scored the first coordinate pulls 0 toward 1.
        let rows = vec![
            vec![0.0, 0.0],
            vec![0.9, 100.0],
            vec![2.0, 0.0],
            vec![2.1, 100.0],
        ];
        let raw = build_knn_graph(&rows, 1, false, Distance::Euclidean).unwrap();
        assert_eq!(raw.edges(), &[(0, 2), (1, 3)]);
        let std = build_knn_graph(&rows, 1, true, Distance::Euclidean).unwrap();
        assert!(std.has_edge(0, 1));
        assert!(!std.has_edge(0, 2));
    }

    #[test]
    fn knn_constant_column_is_harmless() {
        let rows = vec![vec![1.0, 5.0], vec![2.0, 5.0], vec![4.0, 5.0]];
        let g = build_knn_graph(&rows, 1, true, Distance::Euclidean).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn knn_manhattan_differs() {
        // From the origin the diagonal point is Euclidean-nearer
        // (sqrt(2) < 1.8) but Manhattan-farther (2.0 > 1.8).
        let rows = vec![vec![0.0, 0.0], vec![1.8, 0.0], vec![1.0, 1.0]];
        let e = build_knn_graph(&rows, 1, false, Distance::Euclidean).unwrap();
        let m = build_knn_graph(&rows, 1, false, Distance::Manhattan).unwrap();
        assert!(e.has_edge(0, 2));
        assert!(!e.has_edge(0, 1));
        assert!(m.has_edge(0, 1));
    }

    #[test]
    fn knn_k_bounds() {
        let rows = vec![vec![0.0], vec![1.0], vec![2.0]];
        assert!(matches!(
            build_knn_graph(&rows, 3, false, Distance::Euclidean),
            Err(Error::KTooLarge { k: 3, n: 3 })
        ));
        assert!(build_knn_graph(&rows, 0, false, Distance::Euclidean).is_err());
    }

    #[test]
    fn writers_roundtrip() {
        let g = named_abc();
        let labels = vec![1, 2, 1];
        let mut edge_out = Vec::new();
        write_edge_list(&mut edge_out, &g.graph, &g.names).unwrap();
        assert_eq!(String::from_utf8(edge_out).unwrap(), "a b\nb c\n");

        let mut label_out = Vec::new();
        write_labels(&mut label_out, &g.names, &labels).unwrap();
        assert_eq!(String::from_utf8(label_out).unwrap(), "a 1\nb 2\nc 1\n");

        let mut dot = Vec::new();
        write_dot(&mut dot, &g.graph, &g.names, &labels).unwrap();
        let dot = String::from_utf8(dot).unwrap();
        assert!(dot.starts_with("graph lohi {"));
        assert!(dot.contains("colorscheme=set312"));
        assert!(dot.contains("\"a\" [label=\"a (1)\", fillcolor=1];"));
        assert!(dot.contains("\"b\" [label=\"b (2)\", fillcolor=2];"));
        assert!(dot.contains("\"a\" -- \"b\";"));
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn dot_colors_cycle_past_twelve() {
        let mut dot = Vec::new();
        let (g, _) = Graph::new(2, [(0, 1)].into_iter()).unwrap();
        write_dot(
            &mut dot,
            &g,
            &["a".into(), "b".into()],
            &[13, 12],
        )
        .unwrap();
        let dot = String::from_utf8(dot).unwrap();
        assert!(dot.contains("\"a\" [label=\"a (13)\", fillcolor=1];"));
        assert!(dot.contains("\"b\" [label=\"b (12)\", fillcolor=12];"));
    }

    #[test]
    fn edge_list_written_files() {
        let g = named_abc();
        let dir = std::env::temp_dir().join("lohi-ingest-tests");
        let out = dir.join(format!("{}-out.edges", std::process::id()));
        write_edge_list_file(&out, &g.graph, &g.names).unwrap();
        let (g2, _) = read_edge_list(&out, EdgeListFormat::Whitespace).unwrap();
        assert_eq!(g2.graph.edges(), g.graph.edges());
        assert_eq!(g2.names, g.names);
    }
}
