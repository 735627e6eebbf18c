//! Per-node observed and expected Fisher information, the two curvature
//! scores, and the shape operator built from their ratio.
//!
//! Both scores are functions of a node's neighbor-label histogram `U` and the
//! field strength `beta`:
//!
//! * `phi = (U(x) - E[U])^2`, the squared score at the observed label;
//! * `psi = Var[U]`, the expected Fisher information of the local model.
//!
//! The tensorial forms recover the same scalars from outer-product matrices
//! and exist as an independent cross-check of the direct path.

use crate::error::Result;
use crate::graph::{LabeledGraph, NeighborHistogram};
use crate::potts::local_probabilities;

/// Squared score of the observed label: `(U(x) - E_beta[U])^2`.
/// `x` is 1-based.
pub fn phi_direct(u: &NeighborHistogram, x: u32, beta: f64) -> f64 {
    let p = local_probabilities(u, beta);
    let eu: f64 = p.iter().zip(u).map(|(p, &c)| c as f64 * p).sum();
    let d = u[(x - 1) as usize] as f64 - eu;
    d * d
}

/// Variance of `U` under the local conditional, as the moment difference
/// `E[U^2] - E[U]^2`. The difference can round a hair below zero on
/// near-constant histograms, so it is floored at 0 to keep the invariant.
pub fn psi_direct(u: &NeighborHistogram, beta: f64) -> f64 {
    let p = local_probabilities(u, beta);
    let eu: f64 = p.iter().zip(u).map(|(p, &c)| c as f64 * p).sum();
    let eu2: f64 = p
        .iter()
        .zip(u)
        .map(|(p, &c)| (c as f64 * c as f64) * p)
        .sum();
    (eu2 - eu * eu).max(0.0)
}

/// Scratch vectors for the tensorial path, sized `q`.
///
/// With `U` the histogram and `x` the observed label:
/// `v[l] = U(x) - U(l)` and `w[l] = exp(beta (U(l) - max U))`; the max shift
/// cancels from every ratio of outer-product sums.
#[derive(Debug, Clone)]
pub struct TensorWorkspace {
    pub v: Vec<f64>,
    pub w: Vec<f64>,
}

impl TensorWorkspace {
    pub fn build(u: &NeighborHistogram, x: u32, beta: f64) -> Self {
        let max = u.iter().copied().max().unwrap_or(0) as f64;
        let ux = u[(x - 1) as usize] as f64;
        TensorWorkspace {
            v: u.iter().map(|&c| ux - c as f64).collect(),
            w: u.iter().map(|&c| (beta * (c as f64 - max)).exp()).collect(),
        }
    }
}

/// Entrywise sum of a matrix given as its factor action; here the "positive
/// norm" of a rank-one product `m ⊗ m` is just `(sum m)^2`, but the quadratic
/// forms below are written out literally so this path shares no arithmetic
/// with the direct one.
fn entry_sum_outer(m: &[f64]) -> f64 {
    let mut total = 0.0;
    for &mi in m {
        for &mj in m {
            total += mi * mj;
        }
    }
    total
}

/// `phi` recovered from the tensorial form:
/// `|| (v .* w) (v .* w)^T ||_+ / || w w^T ||_+`.
pub fn phi_tensorial(u: &NeighborHistogram, x: u32, beta: f64) -> f64 {
    let ws = TensorWorkspace::build(u, x, beta);
    let vw: Vec<f64> = ws.v.iter().zip(&ws.w).map(|(v, w)| v * w).collect();
    entry_sum_outer(&vw) / entry_sum_outer(&ws.w)
}

/// `psi` recovered from the tensorial form:
/// `|| (A .* B) .* (w w^T) ||_+ / || w w^T ||_+` with `A[l][k] = U(l)` and
/// `B[l][k] = U(l) - U(k)`.
pub fn psi_tensorial(u: &NeighborHistogram, beta: f64) -> f64 {
    let ws = TensorWorkspace::build(u, 1, beta);
    let q = u.len();
    let mut num = 0.0;
    for l in 0..q {
        for k in 0..q {
            let a = u[l] as f64;
            let b = u[l] as f64 - u[k] as f64;
            num += a * b * ws.w[l] * ws.w[k];
        }
    }
    num / entry_sum_outer(&ws.w)
}

/// The scalar shape operator `S = -psi / (phi + lambda)`; `lambda > 0` keeps
/// flat nodes (`phi = 0`) finite instead of collapsing to `-inf`.
pub fn shape_operator(phi: f64, psi: f64, lambda: f64) -> f64 {
    -psi / (phi + lambda)
}

/// Which arithmetic path computes the scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FisherPath {
    /// Scalar expectations straight from the local probabilities.
    Direct,
    /// Literal `O(q^2)` outer-product evaluation; same values, independent
    /// arithmetic.
    Tensorial,
}

/// Per-node scores as produced by [`node_information`].
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct NodeInformation {
    /// Observed information `(U(x) - E[U])^2`.
    pub phi: f64,
    /// Expected information `Var[U]`.
    pub psi: f64,
    /// Raw shape operator `-psi / (phi + lambda)`.
    pub shape: f64,
    /// `shape` min-max rescaled to `[0, 1]` across the graph; all zeros when
    /// every node scores the same.
    pub shape_normalized: f64,
}

/// Scores every node at the given field strength and normalizes the shape
/// operator across the graph.
pub fn node_information(
    lg: &LabeledGraph,
    beta: f64,
    lambda: f64,
    path: FisherPath,
) -> Result<Vec<NodeInformation>> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(crate::error::Error::InvalidConfig(format!(
            "lambda must be a positive finite number, got {lambda}"
        )));
    }
    let hists = lg.neighbor_histograms();
    let mut out: Vec<NodeInformation> = hists
        .iter()
        .zip(lg.labels())
        .map(|(u, &x)| {
            let (phi, psi) = match path {
                FisherPath::Direct => (phi_direct(u, x, beta), psi_direct(u, beta)),
                FisherPath::Tensorial => (phi_tensorial(u, x, beta), psi_tensorial(u, beta)),
            };
            NodeInformation {
                phi,
                psi,
                shape: shape_operator(phi, psi, lambda),
                shape_normalized: 0.0,
            }
        })
        .collect();

    let lo = out.iter().map(|n| n.shape).fold(f64::INFINITY, f64::min);
    let hi = out.iter().map(|n| n.shape).fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    for n in &mut out {
        n.shape_normalized = if span > 0.0 { (n.shape - lo) / span } else { 0.0 };
    }
    Ok(out)
}
