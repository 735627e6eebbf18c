//! The q-state Potts local model: conditional probabilities, pseudo-likelihood,
//! and inverse-temperature estimation.
//!
//! The local conditional at node `i` is a softmax over the neighbor-label
//! histogram: `p(x_i = m | neighbors, beta) = exp(beta U[m]) / sum_l exp(beta U[l])`.
//! The maximum pseudo-likelihood estimate of `beta` is the root of the
//! derivative `sum_i U_i(x_i) - sum_i E_beta[U_i]`, found by the secant method.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, NeighborHistogram};

/// Softmax of `beta * U`, max-subtracted so hub nodes cannot overflow.
/// Entries are strictly positive and sum to 1.
///
/// The shift is the maximum of `beta * U`, not `beta * max(U)`: the two
/// differ when `beta < 0`, and only the former keeps every exponent ≤ 0.
pub fn local_probabilities(u: &NeighborHistogram, beta: f64) -> Vec<f64> {
    let a: Vec<f64> = u.iter().map(|&c| beta * c as f64).collect();
    let m = a.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut e: Vec<f64> = a.iter().map(|&v| (v - m).exp()).collect();
    let total: f64 = e.iter().sum();
    for v in &mut e {
        *v /= total;
    }
    e
}

/// Probability of label `m` (1-based) at a node with histogram `u`.
pub fn local_probability(u: &NeighborHistogram, m: u32, beta: f64) -> Result<f64> {
    let q = u.len() as u32;
    if m < 1 || m > q {
        return Err(Error::LabelOutOfRange { label: m, q });
    }
    Ok(local_probabilities(u, beta)[(m - 1) as usize])
}

/// Mean of `U` under the local conditional: `E_beta[U] = sum_l U[l] p(l)`.
fn expected_u(u: &NeighborHistogram, beta: f64) -> f64 {
    local_probabilities(u, beta)
        .iter()
        .zip(u)
        .map(|(p, &c)| c as f64 * p)
        .sum()
}

/// Log pseudo-likelihood: `sum_i [ beta U_i(x_i) - log sum_l exp(beta U_i(l)) ]`.
pub fn log_pseudo_likelihood(lg: &LabeledGraph, beta: f64) -> f64 {
    let mut total = 0.0;
    for (i, u) in lg.neighbor_histograms().iter().enumerate() {
        let a: Vec<f64> = u.iter().map(|&c| beta * c as f64).collect();
        let m = a.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lse: f64 = a.iter().map(|&v| (v - m).exp()).sum::<f64>().ln() + m;
        let observed = u[(lg.labels()[i] - 1) as usize] as f64;
        total += beta * observed - lse;
    }
    total
}

/// Derivative of the log pseudo-likelihood in `beta`:
/// `sum_i U_i(x_i) - sum_i E_beta[U_i]`. Not globally monotone; do not assume
/// a unique root on arbitrary inputs.
pub fn pl_derivative(lg: &LabeledGraph, beta: f64) -> f64 {
    pl_derivative_from(&lg.neighbor_histograms(), lg.labels(), beta)
}

fn pl_derivative_from(hists: &[NeighborHistogram], labels: &[u32], beta: f64) -> f64 {
    hists
        .iter()
        .zip(labels)
        .map(|(u, &x)| u[(x - 1) as usize] as f64 - expected_u(u, beta))
        .sum()
}

/// Secant-iteration settings for [`estimate_beta`].
#[derive(Debug, Clone, Copy)]
pub struct SecantConfig {
    /// First starting point.
    pub beta0: f64,
    /// Second starting point.
    pub beta1: f64,
    /// Convergence tolerance on both the step and the residual.
    pub tol: f64,
    /// Iteration cap.
    pub max_iter: u32,
    /// Escape bound: with no sign change observed on `[0, beta_max]`, an
    /// iterate leaving `[-beta_max, beta_max]` ends the search.
    pub beta_max: f64,
}

impl Default for SecantConfig {
    fn default() -> Self {
        SecantConfig {
            beta0: 0.0,
            beta1: 1.0,
            tol: 1e-6,
            max_iter: 100,
            beta_max: 10.0,
        }
    }
}

/// How an estimation run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootStatus {
    /// Converged to an interior root of the derivative.
    Interior,
    /// The derivative stayed positive up to `beta_max` (smooth saturated
    /// field, e.g. a connected same-label graph); `beta_mpl` was capped there.
    Saturated,
    /// The derivative is already non-positive at 0 (noisier than uniform);
    /// `beta_mpl` reported as 0.
    NoiseFloor,
    /// Iteration cap reached with a sign change seen but no convergence.
    Unconverged,
}

/// Result of [`estimate_beta`], plus the clamp bookkeeping filled in by
/// [`EstimationResult::with_clamp`].
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct EstimationResult {
    /// The raw maximum pseudo-likelihood estimate.
    pub beta_mpl: f64,
    /// The estimate after clamping; equals `beta_mpl` until a clamp is applied.
    pub beta_used: f64,
    /// Whether the critical-temperature clamp lowered `beta_used`.
    pub clamped: bool,
    /// Whether a negative `beta_mpl` was raised to 0.
    pub zero_clamped: bool,
    /// Secant iterations performed.
    pub iterations: u32,
    /// Derivative value at `beta_mpl`.
    pub residual: f64,
    /// How the run ended.
    pub status: RootStatus,
}

/// Estimates the inverse temperature by secant iteration on [`pl_derivative`].
///
/// Degenerate fields resolve per [`RootStatus`]: a derivative with no sign
/// change on `[0, beta_max]` yields `Saturated` (capped at `beta_max`) when it
/// is positive at 0 and `NoiseFloor` (0) when it is not.
pub fn estimate_beta(lg: &LabeledGraph, cfg: &SecantConfig) -> EstimationResult {
    let hists = lg.neighbor_histograms();
    let labels = lg.labels();
    let f = |b: f64| pl_derivative_from(&hists, labels, b);

    let done = |beta: f64, iterations: u32, residual: f64| EstimationResult {
        beta_mpl: beta,
        beta_used: beta,
        clamped: false,
        zero_clamped: false,
        iterations,
        residual,
        status: RootStatus::Interior,
    };
    let bail = |iterations: u32| {
        // No interior root in sight: diagnose which side the field is on.
        let at_zero = f(0.0);
        if at_zero > 0.0 {
            EstimationResult {
                status: RootStatus::Saturated,
                ..done(cfg.beta_max, iterations, f(cfg.beta_max))
            }
        } else {
            EstimationResult {
                status: RootStatus::NoiseFloor,
                ..done(0.0, iterations, at_zero)
            }
        }
    };

    // Sign bookkeeping over evaluations inside [0, beta_max]: a bracketed root
    // licenses the iteration to wander outside the box on its way back in.
    fn observe(x: f64, fx: f64, beta_max: f64, pos: &mut bool, neg: &mut bool) {
        if (0.0..=beta_max).contains(&x) {
            *pos |= fx > 0.0;
            *neg |= fx < 0.0;
        }
    }
    let mut seen_pos = false;
    let mut seen_neg = false;

    let (mut x0, mut x1) = (cfg.beta0, cfg.beta1);
    let (mut f0, mut f1) = (f(x0), f(x1));
    observe(x0, f0, cfg.beta_max, &mut seen_pos, &mut seen_neg);
    observe(x1, f1, cfg.beta_max, &mut seen_pos, &mut seen_neg);
    if f0.abs() < cfg.tol {
        return done(x0, 0, f0);
    }
    for it in 0..cfg.max_iter {
        if f1.abs() < cfg.tol {
            return done(x1, it, f1);
        }
        let denom = f1 - f0;
        if denom.abs() < 1e-300 {
            return done(x1, it, f1);
        }
        let x2 = x1 - f1 * (x1 - x0) / denom;
        if (x2 - x1).abs() < cfg.tol {
            let res = f(x2);
            return done(x2, it + 1, res);
        }
        if x2.abs() > cfg.beta_max && !(seen_pos && seen_neg) {
            return bail(it + 1);
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
        observe(x1, f1, cfg.beta_max, &mut seen_pos, &mut seen_neg);
    }
    if seen_pos && seen_neg {
        EstimationResult {
            status: RootStatus::Unconverged,
            ..done(x1, cfg.max_iter, f1)
        }
    } else {
        bail(cfg.max_iter)
    }
}

/// Critical inverse temperature of the q-state Potts model: `ln(1 + sqrt(q))`.
pub fn critical_beta(q: u32) -> Result<f64> {
    if q < 2 {
        return Err(Error::TooFewStates { got: q });
    }
    Ok((1.0 + (q as f64).sqrt()).ln())
}

/// Whether [`clamp_beta`] caps estimates at the critical temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClampMode {
    /// Leave the estimate as is.
    None,
    /// Cap at `min(critical_beta(q), beta_mpl)`.
    Critical,
}

/// Applies the critical-temperature cap and the non-negativity floor.
/// Returns `(beta_used, hit_critical, hit_zero)`. With `allow_negative`,
/// negative estimates pass through unchanged.
pub fn clamp_beta(beta_mpl: f64, q: u32, mode: ClampMode, allow_negative: bool) -> Result<(f64, bool, bool)> {
    let mut beta = beta_mpl;
    let mut hit_critical = false;
    if mode == ClampMode::Critical {
        let bc = critical_beta(q)?;
        if beta > bc {
            beta = bc;
            hit_critical = true;
        }
    }
    let mut hit_zero = false;
    if beta < 0.0 && !allow_negative {
        beta = 0.0;
        hit_zero = true;
    }
    Ok((beta, hit_critical, hit_zero))
}

impl EstimationResult {
    /// Returns a copy with `beta_used` resolved through [`clamp_beta`].
    pub fn with_clamp(self, q: u32, mode: ClampMode, allow_negative: bool) -> Result<EstimationResult> {
        let (beta_used, clamped, zero_clamped) = clamp_beta(self.beta_mpl, q, mode, allow_negative)?;
        Ok(EstimationResult {
            beta_used,
            clamped,
            zero_clamped,
            ..self
        })
    }
}
