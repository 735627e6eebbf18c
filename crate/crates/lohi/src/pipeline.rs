//! The end-to-end decomposition pipeline on an already-labeled graph:
//! estimate the field strength, score every node, split at the score
//! quantile, and measure all three partitions.

use crate::decompose::{lohi_decompose, Decomposition};
use crate::error::Result;
use crate::fisher::{node_information, FisherPath, NodeInformation};
use crate::graph::LabeledGraph;
use crate::metrics::{conductance, partition_report};
use crate::potts::{critical_beta, estimate_beta, ClampMode, EstimationResult, RootStatus, SecantConfig};
use crate::report::MetricsBlock;

/// Knobs of [`run_pipeline`]. The defaults are the ones every front end
/// starts from.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    /// Score quantile separating L from H.
    pub quantile: f64,
    /// Flat-node regularizer of the shape operator.
    pub lambda: f64,
    /// Whether the estimate is capped at the critical temperature.
    pub clamp: ClampMode,
    /// Keep a negative estimate instead of flooring it at 0.
    pub allow_negative_beta: bool,
    /// Secant-iteration settings for the estimation step.
    pub secant: SecantConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quantile: 0.75,
            lambda: 0.001,
            clamp: ClampMode::Critical,
            allow_negative_beta: false,
            secant: SecantConfig::default(),
        }
    }
}

/// Everything [`run_pipeline`] produces.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    /// Field-strength estimation, clamps applied.
    pub estimation: EstimationResult,
    /// Per-node scores at the estimated field strength.
    pub info: Vec<NodeInformation>,
    /// The L/H split.
    pub decomposition: Decomposition,
    /// Metric blocks for the original graph and both subgraphs.
    pub metrics: MetricsBlock,
    /// Conditions worth surfacing; never fatal.
    pub warnings: Vec<String>,
}

/// Runs estimation, scoring, decomposition, and measurement in sequence.
pub fn run_pipeline(lg: &LabeledGraph, cfg: &RunConfig) -> Result<PipelineResult> {
    let estimation =
        estimate_beta(lg, &cfg.secant).with_clamp(lg.q(), cfg.clamp, cfg.allow_negative_beta)?;

    let mut warnings = Vec::new();
    match estimation.status {
        RootStatus::Interior => {}
        RootStatus::Saturated => warnings.push(format!(
            "pseudo-likelihood gradient has no interior root; estimate capped at beta_max = {}",
            cfg.secant.beta_max
        )),
        RootStatus::NoiseFloor => warnings.push(
            "labels are noisier than a uniform field; estimate reported as 0".to_string(),
        ),
        RootStatus::Unconverged => warnings.push(format!(
            "secant iteration did not converge within {} iterations",
            cfg.secant.max_iter
        )),
    }
    if estimation.clamped {
        warnings.push(format!(
            "estimate {} exceeds the critical value {}; using the critical value",
            estimation.beta_mpl,
            critical_beta(lg.q())?
        ));
    }
    if estimation.zero_clamped {
        warnings.push(format!(
            "negative estimate {} raised to 0; pass allow_negative_beta to keep it",
            estimation.beta_mpl
        ));
    }

    let info = node_information(lg, estimation.beta_used, cfg.lambda, FisherPath::Direct)?;
    let scores: Vec<f64> = info.iter().map(|n| n.shape_normalized).collect();
    let decomposition = lohi_decompose(lg, &scores, cfg.quantile)?;
    if decomposition.degenerate {
        warnings.push(
            "every node scored identically; H is empty and L holds the whole graph".to_string(),
        );
    }

    let mut original = partition_report(&lg.graph, lg.labels());
    original.conductance_lh = conductance(&lg.graph, &decomposition.high).ok().flatten();
    let low = partition_report(
        &decomposition.low_subgraph.graph,
        decomposition.low_subgraph.labels(),
    );
    let high = partition_report(
        &decomposition.high_subgraph.graph,
        decomposition.high_subgraph.labels(),
    );

    Ok(PipelineResult {
        estimation,
        info,
        decomposition,
        metrics: MetricsBlock {
            original,
            low,
            high,
        },
        warnings,
    })
}
