//! Gibbs (heat-bath) sampling of the q-state Potts field on a graph, plus the
//! rectangular-lattice builder used for calibration runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, LabeledGraph};
use crate::potts::local_probabilities;

/// Settings for [`gibbs_sample`].
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SamplerConfig {
    /// Inverse temperature of the field being simulated.
    pub beta: f64,
    /// Number of label states.
    pub q: u32,
    /// Full raster sweeps to run.
    pub sweeps: u32,
    /// Sweeps regarded as equilibration. The sampler returns only the final
    /// configuration, so this is bookkeeping for the caller; it still must
    /// leave at least one counted sweep.
    pub burn_in: u32,
    /// RNG seed; equal seeds give equal runs.
    pub seed: u64,
}

/// Four-neighbor rectangular lattice, row-major node ids (`r * cols + c`).
/// With `torus` the rows and columns wrap; wrap edges that collapse onto an
/// existing edge or a self-edge (side length 1 or 2) are deduplicated away.
pub fn grid_graph(rows: usize, cols: usize, torus: bool) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidConfig(format!(
            "grid must have positive extent, got {rows}x{cols}"
        )));
    }
    let idx = |r: usize, c: usize| (r * cols + c) as u32;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((idx(r, c), idx(r, c + 1)));
            } else if torus {
                edges.push((idx(r, c), idx(r, 0)));
            }
            if r + 1 < rows {
                edges.push((idx(r, c), idx(r + 1, c)));
            } else if torus {
                edges.push((idx(r, c), idx(0, c)));
            }
        }
    }
    let (graph, _) = Graph::new(rows * cols, edges)?;
    Ok(graph)
}

/// Heat-bath Gibbs sampler: nodes are updated in raster order, each redrawn
/// from its local conditional given the current neighbor labels. Returns the
/// configuration after the last sweep.
pub fn gibbs_sample(g: &Graph, cfg: &SamplerConfig) -> Result<LabeledGraph> {
    if cfg.q < 2 {
        return Err(Error::TooFewStates { got: cfg.q });
    }
    if !cfg.beta.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "beta must be finite, got {}",
            cfg.beta
        )));
    }
    if cfg.sweeps == 0 || cfg.burn_in >= cfg.sweeps {
        return Err(Error::InvalidConfig(format!(
            "need sweeps > burn_in >= 0, got sweeps = {}, burn_in = {}",
            cfg.sweeps, cfg.burn_in
        )));
    }

    let n = g.node_count();
    let q = cfg.q as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut labels: Vec<u32> = (0..n).map(|_| rng.gen_range(0..cfg.q) + 1).collect();

    let mut hist = vec![0u32; q];
    for _ in 0..cfg.sweeps {
        for i in 0..n {
            hist.iter_mut().for_each(|h| *h = 0);
            for &j in g.neighbors(i).expect("in range") {
                hist[(labels[j as usize] - 1) as usize] += 1;
            }
            let p = local_probabilities(&hist, cfg.beta);
            // Inverse-transform draw on a single uniform variate.
            let r: f64 = rng.gen();
            let mut acc = 0.0;
            let mut drawn = cfg.q;
            for (m, pm) in p.iter().enumerate() {
                acc += pm;
                if r < acc {
                    drawn = m as u32 + 1;
                    break;
                }
            }
            labels[i] = drawn;
        }
    }
    LabeledGraph::new(g.clone(), labels, cfg.q)
}
