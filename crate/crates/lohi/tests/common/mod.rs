//! Helpers shared by the integration suites: locating the bundled data,
//! running the edge-list pipeline, and tolerance checks.

// Each test binary compiles its own copy and uses a different slice of it.
#![allow(dead_code)]

use std::path::PathBuf;

use lohi::community::detect_communities_named;
use lohi::graph::LabeledGraph;
use lohi::ingest::{read_edge_list, EdgeListFormat, NamedGraph};
use lohi::pipeline::{run_pipeline, PipelineResult, RunConfig};

pub fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
}

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

pub fn load_network(rel: &str) -> NamedGraph {
    let path = data_path(rel);
    let (named, _) = read_edge_list(&path, EdgeListFormat::from_path(&path))
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    named
}

/// CNM labels plus the default pipeline (0.75 quantile, critical clamp) on a
/// bundled edge list.
pub fn run_cnm_pipeline(rel: &str) -> (NamedGraph, LabeledGraph, PipelineResult) {
    let named = load_network(rel);
    let part = detect_communities_named(&named).expect("bundled networks are labelable");
    let lg = LabeledGraph::new(named.graph.clone(), part.labels, part.q).expect("valid labels");
    let result = run_pipeline(&lg, &RunConfig::default()).expect("pipeline");
    (named, lg, result)
}

/// Mixed relative-absolute closeness: |a - b| <= tol * max(1, |b|).
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[track_caller]
pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!(close(a, b, tol), "{what}: {a} vs {b} (tol {tol})");
}

/// Internal ids mapped through the interned names and parsed back to the
/// integers used in the source file, sorted ascending.
pub fn ids_as_names(named: &NamedGraph, ids: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = ids
        .iter()
        .map(|&i| named.names[i as usize].parse().expect("numeric node name"))
        .collect();
    out.sort_unstable();
    out
}
