//! Thresholding of normalized shape scores into the low-information (L) and
//! high-information (H) node sets, and the induced subgraphs of both.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, NodeSet};

/// Nearest-rank quantile: with the scores sorted ascending, the value at
/// index `ceil(p * n) - 1`. `p` must lie strictly inside `(0, 1)`.
pub fn quantile_threshold(scores: &[f64], p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::QuantileRange { p });
    }
    if scores.is_empty() {
        return Err(Error::EmptyScores);
    }
    let mut sorted = scores.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let idx = (p * sorted.len() as f64).ceil() as usize - 1;
    Ok(sorted[idx])
}

/// The L/H split of a labeled graph at a score threshold.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// The nearest-rank threshold actually used.
    pub threshold: f64,
    /// The quantile it came from.
    pub quantile: f64,
    /// Every score was identical, so the split fell back to `L = V`.
    pub degenerate: bool,
    /// Nodes scoring below the threshold.
    pub low: NodeSet,
    /// Nodes scoring at or above the threshold.
    pub high: NodeSet,
    /// Subgraph induced by `low`, labels carried over.
    pub low_subgraph: LabeledGraph,
    /// Original id of each `low_subgraph` node.
    pub low_ids: Vec<u32>,
    /// Subgraph induced by `high`, labels carried over.
    pub high_subgraph: LabeledGraph,
    /// Original id of each `high_subgraph` node.
    pub high_ids: Vec<u32>,
}

/// Splits the nodes at the `p` nearest-rank quantile of `scores` (the
/// normalized shape scores, one per node): `H = {i : score_i >= T}`, `L` the
/// rest.
///
/// A constant score vector cannot be thresholded meaningfully; that case
/// returns `H` empty, `L = V`, and the `degenerate` flag set for the caller
/// to warn about.
pub fn lohi_decompose(lg: &LabeledGraph, scores: &[f64], p: f64) -> Result<Decomposition> {
    let n = lg.graph.node_count();
    if scores.len() != n {
        return Err(Error::InvalidConfig(format!(
            "{} scores for a graph with {} nodes",
            scores.len(),
            n
        )));
    }
    let threshold = quantile_threshold(scores, p)?;
    let degenerate = scores.iter().all(|s| *s == scores[0]);

    let high = if degenerate {
        NodeSet::new(std::iter::empty())
    } else {
        NodeSet::new(
            scores
                .iter()
                .enumerate()
                .filter(|&(_, s)| *s >= threshold)
                .map(|(i, _)| i as u32),
        )
    };
    let low = high.complement(n);
    let (low_subgraph, low_ids) = lg.induced(&low)?;
    let (high_subgraph, high_ids) = lg.induced(&high)?;
    Ok(Decomposition {
        threshold,
        quantile: p,
        degenerate,
        low,
        high,
        low_subgraph,
        low_ids,
        high_subgraph,
        high_ids,
    })
}
