//! Command-line front end: reads graphs or feature matrices, runs the
//! decomposition pipeline, and emits versioned JSON reports.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error. Warnings go to stderr
//! and never change the exit code. All stdout output is deterministic for a
//! fixed input and configuration.

use std::fmt;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lohi::community::greedy_modularity_communities_named;
use lohi::graph::LabeledGraph;
use lohi::ingest::{
    build_knn_graph, read_edge_list, read_feature_csv, read_labels, write_dot_file,
    write_edge_list, write_edge_list_file, write_labels, Distance, EdgeListFormat, NamedGraph,
};
use lohi::metrics::{modularity, partition_report, PartitionReport};
use lohi::pipeline::{run_pipeline, RunConfig};
use lohi::potts::{critical_beta, estimate_beta, ClampMode, EstimationResult, SecantConfig};
use lohi::report::{to_json_pretty, write_node_csv, GraphBlock, SummaryReport};
use lohi::sampler::{gibbs_sample, grid_graph, SamplerConfig};

#[derive(Parser)]
#[command(
    name = "lohi",
    version,
    about = "Potts-field information scoring and low/high-information decomposition of labeled networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline: estimate the field, score nodes, split, measure
    Decompose(DecomposeArgs),
    /// Build a k-nearest-neighbor graph from a feature CSV
    Knn(KnnArgs),
    /// Detect communities by greedy modularity maximization
    Communities(CommunitiesArgs),
    /// Measure a given labeling of a graph
    Metrics(MetricsArgs),
    /// Fit the field strength of a labeled graph
    Estimate(EstimateArgs),
    /// Draw a Potts configuration on a rectangular lattice
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatOpt {
    /// Pick by file extension (.csv is comma-separated, anything else whitespace)
    Auto,
    Whitespace,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistanceOpt {
    Euclidean,
    Manhattan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClampOpt {
    /// Critical for edge-list inputs, none for k-NN inputs
    Auto,
    Critical,
    None,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("input").required(true))]
#[command(group = clap::ArgGroup::new("labsrc"))]
struct DecomposeArgs {
    /// Edge-list input (pair with --labels or --cnm)
    #[arg(long, value_name = "FILE", group = "input")]
    edges: Option<PathBuf>,
    /// Edge-list syntax
    #[arg(long, value_enum, default_value_t = FormatOpt::Auto, requires = "edges")]
    format: FormatOpt,
    /// Label file: name-label pairs, or one label per line in node order
    #[arg(long, value_name = "FILE", group = "labsrc", requires = "edges")]
    labels: Option<PathBuf>,
    /// Derive labels by greedy modularity communities
    #[arg(long, group = "labsrc", requires = "edges")]
    cnm: bool,
    /// Feature CSV input (k-NN lane; pair with --class-column)
    #[arg(long, value_name = "FILE", group = "input", requires = "class_column")]
    csv: Option<PathBuf>,
    /// Class column of the feature CSV
    #[arg(long, value_name = "NAME", requires = "csv")]
    class_column: Option<String>,
    /// Neighbors per node for the k-NN graph
    #[arg(long, default_value_t = 15, requires = "csv")]
    k: usize,
    /// Skip per-column standardization of the features
    #[arg(long, requires = "csv")]
    no_standardize: bool,
    /// Distance for neighbor selection
    #[arg(long, value_enum, default_value_t = DistanceOpt::Euclidean, requires = "csv")]
    distance: DistanceOpt,
    /// Score quantile separating L from H
    #[arg(long, default_value_t = 0.75)]
    quantile: f64,
    /// Flat-node regularizer of the shape operator
    #[arg(long, default_value_t = 0.001)]
    lambda: f64,
    /// Cap the estimate at the critical value
    #[arg(long, value_enum, default_value_t = ClampOpt::Auto)]
    clamp: ClampOpt,
    /// Keep a negative estimate instead of flooring it at 0
    #[arg(long)]
    allow_negative_beta: bool,
    /// Write the per-node score table here
    #[arg(long, value_name = "FILE")]
    nodes_csv: Option<PathBuf>,
    /// Write the L subgraph edge list here
    #[arg(long, value_name = "FILE")]
    out_low: Option<PathBuf>,
    /// Write the H subgraph edge list here
    #[arg(long, value_name = "FILE")]
    out_high: Option<PathBuf>,
    /// Write the L subgraph as Graphviz DOT here
    #[arg(long, value_name = "FILE")]
    dot_low: Option<PathBuf>,
    /// Write the H subgraph as Graphviz DOT here
    #[arg(long, value_name = "FILE")]
    dot_high: Option<PathBuf>,
}

#[derive(Args)]
struct KnnArgs {
    /// Feature CSV input
    #[arg(long, value_name = "FILE")]
    csv: PathBuf,
    /// Class column of the feature CSV
    #[arg(long, value_name = "NAME")]
    class_column: String,
    /// Neighbors per node
    #[arg(long, default_value_t = 15)]
    k: usize,
    /// Skip per-column standardization
    #[arg(long)]
    no_standardize: bool,
    /// Distance for neighbor selection
    #[arg(long, value_enum, default_value_t = DistanceOpt::Euclidean)]
    distance: DistanceOpt,
    /// Write the edge list here; without it the edge list goes to stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Write name-label lines here
    #[arg(long, value_name = "FILE")]
    labels_out: Option<PathBuf>,
}

#[derive(Args)]
struct CommunitiesArgs {
    /// Edge-list input
    #[arg(long, value_name = "FILE")]
    edges: PathBuf,
    /// Edge-list syntax
    #[arg(long, value_enum, default_value_t = FormatOpt::Auto)]
    format: FormatOpt,
}

#[derive(Args)]
struct MetricsArgs {
    /// Edge-list input
    #[arg(long, value_name = "FILE")]
    edges: PathBuf,
    /// Edge-list syntax
    #[arg(long, value_enum, default_value_t = FormatOpt::Auto)]
    format: FormatOpt,
    /// Label file: name-label pairs, or one label per line in node order
    #[arg(long, value_name = "FILE")]
    labels: PathBuf,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("labsrc"))]
struct EstimateArgs {
    /// Edge-list input
    #[arg(long, value_name = "FILE")]
    edges: PathBuf,
    /// Edge-list syntax
    #[arg(long, value_enum, default_value_t = FormatOpt::Auto)]
    format: FormatOpt,
    /// Label file: name-label pairs, or one label per line in node order
    #[arg(long, value_name = "FILE", group = "labsrc")]
    labels: Option<PathBuf>,
    /// Derive labels by greedy modularity communities
    #[arg(long, group = "labsrc")]
    cnm: bool,
    /// Cap the estimate at the critical value
    #[arg(long, value_enum, default_value_t = ClampOpt::Auto)]
    clamp: ClampOpt,
    /// Keep a negative estimate instead of flooring it at 0
    #[arg(long)]
    allow_negative_beta: bool,
}

#[derive(Args)]
struct SampleArgs {
    /// Lattice rows
    #[arg(long)]
    rows: usize,
    /// Lattice columns
    #[arg(long)]
    cols: usize,
    /// Wrap the lattice into a torus
    #[arg(long)]
    torus: bool,
    /// Number of label states
    #[arg(long)]
    q: u32,
    /// Inverse temperature of the simulated field
    #[arg(long)]
    beta: f64,
    /// Full raster sweeps
    #[arg(long, default_value_t = 500)]
    sweeps: u32,
    /// Equilibration sweeps; bookkeeping only, must stay below --sweeps
    #[arg(long, default_value_t = 0)]
    burn_in: u32,
    /// RNG seed; equal seeds give equal draws
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the lattice edge list here
    #[arg(long, value_name = "FILE")]
    out_edges: Option<PathBuf>,
    /// Write the drawn labels here
    #[arg(long, value_name = "FILE")]
    out_labels: Option<PathBuf>,
}

/// A bad parameter combination caught after clap; maps to exit code 1.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return 1;
    }
    match e.downcast_ref::<lohi::Error>() {
        Some(le) if le.is_usage() => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Decompose(a) => cmd_decompose(a),
        Command::Knn(a) => cmd_knn(a),
        Command::Communities(a) => cmd_communities(a),
        Command::Metrics(a) => cmd_metrics(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Sample(a) => cmd_sample(a),
    }
}

fn edge_format(opt: FormatOpt, path: &Path) -> EdgeListFormat {
    match opt {
        FormatOpt::Auto => EdgeListFormat::from_path(path),
        FormatOpt::Whitespace => EdgeListFormat::Whitespace,
        FormatOpt::Csv => EdgeListFormat::Csv,
    }
}

fn distance(opt: DistanceOpt) -> Distance {
    match opt {
        DistanceOpt::Euclidean => Distance::Euclidean,
        DistanceOpt::Manhattan => Distance::Manhattan,
    }
}

fn distance_name(opt: DistanceOpt) -> &'static str {
    match opt {
        DistanceOpt::Euclidean => "euclidean",
        DistanceOpt::Manhattan => "manhattan",
    }
}

fn resolve_clamp(opt: ClampOpt, edge_lane: bool) -> ClampMode {
    match opt {
        ClampOpt::Auto => {
            if edge_lane {
                ClampMode::Critical
            } else {
                ClampMode::None
            }
        }
        ClampOpt::Critical => ClampMode::Critical,
        ClampOpt::None => ClampMode::None,
    }
}

fn clamp_name(mode: ClampMode) -> &'static str {
    match mode {
        ClampMode::Critical => "critical",
        ClampMode::None => "none",
    }
}

fn load_graph(path: &Path, fmt: FormatOpt) -> anyhow::Result<(NamedGraph, Vec<String>)> {
    let (named, report) = read_edge_list(path, edge_format(fmt, path))?;
    Ok((named, report.warnings()))
}

/// Labels either from a file (keyed or in node order) or from community
/// detection on the graph itself.
fn resolve_labels(
    named: &NamedGraph,
    labels: Option<&Path>,
) -> anyhow::Result<(Vec<u32>, u32, &'static str)> {
    match labels {
        Some(path) => {
            let (labels, q) = read_labels(path, named)?;
            Ok((labels, q, "file"))
        }
        None => {
            let part = lohi::community::detect_communities_named(named)?;
            Ok((part.labels, part.q, "cnm"))
        }
    }
}

fn emit_warnings(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn map_names(names: &[String], ids: &[u32]) -> Vec<String> {
    ids.iter().map(|&i| names[i as usize].clone()).collect()
}

fn index_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn create_file(path: &Path) -> anyhow::Result<io::BufWriter<fs::File>> {
    let f = fs::File::create(path).with_context(|| path.display().to_string())?;
    Ok(io::BufWriter::new(f))
}

fn write_labels_file(path: &Path, names: &[String], labels: &[u32]) -> anyhow::Result<()> {
    let mut f = create_file(path)?;
    write_labels(&mut f, names, labels).with_context(|| path.display().to_string())?;
    f.flush().with_context(|| path.display().to_string())?;
    Ok(())
}

#[derive(Serialize)]
struct DecomposeConfig {
    command: &'static str,
    input: String,
    lane: &'static str,
    label_source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class_column: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    standardize: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<&'static str>,
    quantile: f64,
    lambda: f64,
    clamp: &'static str,
    allow_negative_beta: bool,
}

fn cmd_decompose(a: DecomposeArgs) -> anyhow::Result<()> {
    let mut warnings = Vec::new();

    let (lg, names, clamp, config) = if let Some(edges) = &a.edges {
        if a.labels.is_none() && !a.cnm {
            return Err(UsageError("--edges needs a label source: --labels or --cnm".into()).into());
        }
        let (named, w) = load_graph(edges, a.format)?;
        warnings.extend(w);
        let (labels, q, label_source) = resolve_labels(&named, a.labels.as_deref())?;
        let clamp = resolve_clamp(a.clamp, true);
        let config = DecomposeConfig {
            command: "decompose",
            input: edges.display().to_string(),
            lane: "edge-list",
            label_source,
            labels: a.labels.as_ref().map(|p| p.display().to_string()),
            class_column: None,
            k: None,
            standardize: None,
            distance: None,
            quantile: a.quantile,
            lambda: a.lambda,
            clamp: clamp_name(clamp),
            allow_negative_beta: a.allow_negative_beta,
        };
        let lg = LabeledGraph::new(named.graph.clone(), labels, q)?;
        (lg, named.names, clamp, config)
    } else {
        let csv = a.csv.as_ref().expect("clap guarantees an input");
        let class_column = a.class_column.as_ref().expect("clap ties this to --csv");
        let fm = read_feature_csv(csv, class_column)?;
        let graph = build_knn_graph(&fm.rows, a.k, !a.no_standardize, distance(a.distance))?;
        let clamp = resolve_clamp(a.clamp, false);
        let config = DecomposeConfig {
            command: "decompose",
            input: csv.display().to_string(),
            lane: "knn",
            label_source: "class-column",
            labels: None,
            class_column: Some(class_column.clone()),
            k: Some(a.k),
            standardize: Some(!a.no_standardize),
            distance: Some(distance_name(a.distance)),
            quantile: a.quantile,
            lambda: a.lambda,
            clamp: clamp_name(clamp),
            allow_negative_beta: a.allow_negative_beta,
        };
        let names = index_names(graph.node_count());
        let lg = LabeledGraph::new(graph, fm.labels, fm.q)?;
        (lg, names, clamp, config)
    };

    let run_cfg = RunConfig {
        quantile: a.quantile,
        lambda: a.lambda,
        clamp,
        allow_negative_beta: a.allow_negative_beta,
        secant: SecantConfig::default(),
    };
    let result = run_pipeline(&lg, &run_cfg)?;
    warnings.extend(result.warnings.iter().cloned());
    emit_warnings(&warnings);

    let d = &result.decomposition;
    if let Some(p) = &a.nodes_csv {
        let mut f = create_file(p)?;
        write_node_csv(&mut f, &lg.graph, &names, &result.info, &d.high)
            .with_context(|| p.display().to_string())?;
        f.flush().with_context(|| p.display().to_string())?;
    }
    let low_names = map_names(&names, &d.low_ids);
    let high_names = map_names(&names, &d.high_ids);
    if let Some(p) = &a.out_low {
        write_edge_list_file(p, &d.low_subgraph.graph, &low_names)?;
    }
    if let Some(p) = &a.out_high {
        write_edge_list_file(p, &d.high_subgraph.graph, &high_names)?;
    }
    if let Some(p) = &a.dot_low {
        write_dot_file(p, &d.low_subgraph.graph, &low_names, d.low_subgraph.labels())?;
    }
    if let Some(p) = &a.dot_high {
        write_dot_file(p, &d.high_subgraph.graph, &high_names, d.high_subgraph.labels())?;
    }

    let summary = SummaryReport {
        schema_version: 1,
        config,
        graph: GraphBlock {
            nodes: lg.graph.node_count(),
            edges: lg.graph.edge_count(),
            q: lg.q(),
        },
        estimation: result.estimation,
        threshold: d.threshold,
        quantile: d.quantile,
        degenerate: d.degenerate,
        low_count: d.low.len(),
        high_count: d.high.len(),
        metrics: result.metrics,
        low_nodes: map_names(&names, d.low.as_slice()),
        high_nodes: map_names(&names, d.high.as_slice()),
        warnings,
    };
    println!("{}", to_json_pretty(&summary)?);
    Ok(())
}

#[derive(Serialize)]
struct KnnConfig {
    command: &'static str,
    input: String,
    class_column: String,
    k: usize,
    standardize: bool,
    distance: &'static str,
}

#[derive(Serialize)]
struct KnnOutputs {
    edges: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<String>,
}

#[derive(Serialize)]
struct KnnReport {
    schema_version: u32,
    config: KnnConfig,
    rows: usize,
    features: usize,
    graph: GraphBlock,
    outputs: KnnOutputs,
}

fn cmd_knn(a: KnnArgs) -> anyhow::Result<()> {
    let fm = read_feature_csv(&a.csv, &a.class_column)?;
    let graph = build_knn_graph(&fm.rows, a.k, !a.no_standardize, distance(a.distance))?;
    let names = index_names(graph.node_count());
    if let Some(p) = &a.labels_out {
        write_labels_file(p, &names, &fm.labels)?;
    }
    match &a.output {
        Some(p) => {
            write_edge_list_file(p, &graph, &names)?;
            let report = KnnReport {
                schema_version: 1,
                config: KnnConfig {
                    command: "knn",
                    input: a.csv.display().to_string(),
                    class_column: a.class_column.clone(),
                    k: a.k,
                    standardize: !a.no_standardize,
                    distance: distance_name(a.distance),
                },
                rows: fm.rows.len(),
                features: fm.columns.len(),
                graph: GraphBlock {
                    nodes: graph.node_count(),
                    edges: graph.edge_count(),
                    q: fm.q,
                },
                outputs: KnnOutputs {
                    edges: p.display().to_string(),
                    labels: a.labels_out.as_ref().map(|p| p.display().to_string()),
                },
            };
            println!("{}", to_json_pretty(&report)?);
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write_edge_list(&mut out, &graph, &names).context("stdout")?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SimpleConfig {
    command: &'static str,
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<String>,
}

#[derive(Serialize)]
struct CommunitiesReport {
    schema_version: u32,
    config: SimpleConfig,
    graph: GraphBlock,
    communities: Vec<Vec<String>>,
    modularity: f64,
    warnings: Vec<String>,
}

fn cmd_communities(a: CommunitiesArgs) -> anyhow::Result<()> {
    let (named, warnings) = load_graph(&a.edges, a.format)?;
    emit_warnings(&warnings);
    let communities = greedy_modularity_communities_named(&named)?;
    let mut labels = vec![0u32; named.graph.node_count()];
    for (ci, members) in communities.iter().enumerate() {
        for &v in members {
            labels[v as usize] = ci as u32 + 1;
        }
    }
    let report = CommunitiesReport {
        schema_version: 1,
        config: SimpleConfig {
            command: "communities",
            input: a.edges.display().to_string(),
            labels: None,
        },
        graph: GraphBlock {
            nodes: named.graph.node_count(),
            edges: named.graph.edge_count(),
            q: communities.len() as u32,
        },
        communities: communities
            .iter()
            .map(|c| map_names(&named.names, c))
            .collect(),
        modularity: modularity(&named.graph, &labels)?,
        warnings,
    };
    println!("{}", to_json_pretty(&report)?);
    Ok(())
}

#[derive(Serialize)]
struct MetricsReport {
    schema_version: u32,
    config: SimpleConfig,
    graph: GraphBlock,
    metrics: PartitionReport,
    warnings: Vec<String>,
}

fn cmd_metrics(a: MetricsArgs) -> anyhow::Result<()> {
    let (named, warnings) = load_graph(&a.edges, a.format)?;
    emit_warnings(&warnings);
    let (labels, q) = read_labels(&a.labels, &named)?;
    let report = MetricsReport {
        schema_version: 1,
        config: SimpleConfig {
            command: "metrics",
            input: a.edges.display().to_string(),
            labels: Some(a.labels.display().to_string()),
        },
        graph: GraphBlock {
            nodes: named.graph.node_count(),
            edges: named.graph.edge_count(),
            q,
        },
        metrics: partition_report(&named.graph, &labels),
        warnings,
    };
    println!("{}", to_json_pretty(&report)?);
    Ok(())
}

#[derive(Serialize)]
struct EstimateConfig {
    command: &'static str,
    input: String,
    label_source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<String>,
    clamp: &'static str,
    allow_negative_beta: bool,
}

#[derive(Serialize)]
struct EstimateReport {
    schema_version: u32,
    config: EstimateConfig,
    graph: GraphBlock,
    critical_beta: f64,
    estimation: EstimationResult,
    warnings: Vec<String>,
}

fn cmd_estimate(a: EstimateArgs) -> anyhow::Result<()> {
    if a.labels.is_none() && !a.cnm {
        return Err(UsageError("estimate needs a label source: --labels or --cnm".into()).into());
    }
    let (named, warnings) = load_graph(&a.edges, a.format)?;
    emit_warnings(&warnings);
    let (labels, q, label_source) = resolve_labels(&named, a.labels.as_deref())?;
    let clamp = resolve_clamp(a.clamp, true);
    let lg = LabeledGraph::new(named.graph.clone(), labels, q)?;
    let estimation =
        estimate_beta(&lg, &SecantConfig::default()).with_clamp(q, clamp, a.allow_negative_beta)?;
    let report = EstimateReport {
        schema_version: 1,
        config: EstimateConfig {
            command: "estimate",
            input: a.edges.display().to_string(),
            label_source,
            labels: a.labels.as_ref().map(|p| p.display().to_string()),
            clamp: clamp_name(clamp),
            allow_negative_beta: a.allow_negative_beta,
        },
        graph: GraphBlock {
            nodes: named.graph.node_count(),
            edges: named.graph.edge_count(),
            q,
        },
        critical_beta: critical_beta(q)?,
        estimation,
        warnings,
    };
    println!("{}", to_json_pretty(&report)?);
    Ok(())
}

#[derive(Serialize)]
struct SampleConfigBlock {
    command: &'static str,
    rows: usize,
    cols: usize,
    torus: bool,
    q: u32,
    beta: f64,
    sweeps: u32,
    burn_in: u32,
    seed: u64,
}

#[derive(Serialize)]
struct SampleOutputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    edges: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<String>,
}

#[derive(Serialize)]
struct SampleReport {
    schema_version: u32,
    config: SampleConfigBlock,
    graph: GraphBlock,
    label_counts: Vec<usize>,
    outputs: SampleOutputs,
}

fn cmd_sample(a: SampleArgs) -> anyhow::Result<()> {
    if a.beta < 0.0 {
        return Err(UsageError(format!("beta must be nonnegative, got {}", a.beta)).into());
    }
    if a.q < 2 {
        return Err(UsageError(format!("need at least 2 label states, got {}", a.q)).into());
    }
    let g = grid_graph(a.rows, a.cols, a.torus)?;
    let cfg = SamplerConfig {
        beta: a.beta,
        q: a.q,
        sweeps: a.sweeps,
        burn_in: a.burn_in,
        seed: a.seed,
    };
    let lg = gibbs_sample(&g, &cfg)?;
    let names = index_names(lg.graph.node_count());
    if let Some(p) = &a.out_edges {
        write_edge_list_file(p, &lg.graph, &names)?;
    }
    if let Some(p) = &a.out_labels {
        write_labels_file(p, &names, lg.labels())?;
    }
    let mut label_counts = vec![0usize; a.q as usize];
    for &l in lg.labels() {
        label_counts[(l - 1) as usize] += 1;
    }
    let report = SampleReport {
        schema_version: 1,
        config: SampleConfigBlock {
            command: "sample",
            rows: a.rows,
            cols: a.cols,
            torus: a.torus,
            q: a.q,
            beta: a.beta,
            sweeps: a.sweeps,
            burn_in: a.burn_in,
            seed: a.seed,
        },
        graph: GraphBlock {
            nodes: lg.graph.node_count(),
            edges: lg.graph.edge_count(),
            q: a.q,
        },
        label_counts,
        outputs: SampleOutputs {
            edges: a.out_edges.as_ref().map(|p| p.display().to_string()),
            labels: a.out_labels.as_ref().map(|p| p.display().to_string()),
        },
    };
    println!("{}", to_json_pretty(&report)?);
    Ok(())
}
