//! Recovery of link delays from end-to-end measurements.
//!
//! The betweenness-prior program minimises
//!
//! ```text
//! λ‖x − s‖₁ + γ‖Ax − y‖₂² + α‖x − s‖₂²
//! ```
//!
//! With `β = x − s` and `y′ = y − A·s` this is the elastic net
//! `λ‖β‖₁ + γ‖Aβ − y′‖₂² + α‖β‖₂²`, which is solved by cyclic coordinate
//! descent and mapped back through `x = β + s`. LASSO is the special case
//! `s = 0`, `α = 0`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::EdgeBetweenness;
use crate::prior::PriorVector;
use crate::sampling::BinaryMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// ℓ1 weight.
    pub lambda: f64,
    /// Residual weight.
    pub gamma: f64,
    /// ℓ2 weight towards the prior.
    pub alpha: f64,
    /// Maximum number of full coordinate sweeps.
    pub max_iter: usize,
    /// Sweeps stop once no coordinate moves by `tol` or more.
    pub tol: f64,
    /// A link is labelled congested when its recovered delay is at least `theta · D`.
    pub theta: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverPreset::Weak.config()
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str, v: f64| Err(Error::InvalidConfig(format!("{what}, got {v}")));
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return bad("lambda must be >= 0", self.lambda);
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return bad("gamma must be > 0", self.gamma);
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return bad("alpha must be >= 0", self.alpha);
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tol must be > 0", self.tol);
        }
        if !self.theta.is_finite() {
            return bad("theta must be finite", self.theta);
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

/// Named hyperparameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverPreset {
    /// λ = 10⁻³, α = 10⁻⁵, γ = 1.
    Weak,
    /// λ = α = γ = 1.
    Unit,
}

impl SolverPreset {
    pub fn config(self) -> SolverConfig {
        let (lambda, alpha) = match self {
            SolverPreset::Weak => (1e-3, 1e-5),
            SolverPreset::Unit => (1.0, 1.0),
        };
        SolverConfig {
            lambda,
            gamma: 1.0,
            alpha,
            max_iter: 50_000,
            tol: 1e-9,
            theta: 0.5,
        }
    }
}

impl FromStr for SolverPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(SolverPreset::Weak),
            "unit" => Ok(SolverPreset::Unit),
            other => Err(Error::InvalidConfig(format!(
                "unknown solver preset {other:?} (expected weak or unit)"
            ))),
        }
    }
}

impl fmt::Display for SolverPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverPreset::Weak => "weak",
            SolverPreset::Unit => "unit",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    pub x_hat: Vec<f64>,
    /// Objective evaluated from scratch at `x_hat`.
    pub objective_value: f64,
    /// Sweeps performed.
    pub iterations: usize,
    pub converged: bool,
    /// Links with `x_hat[j] >= theta · D`, ascending.
    pub congested: Vec<usize>,
}

/// `λ‖x − s‖₁ + γ‖Ax − y‖₂² + α‖x − s‖₂²`.
pub fn objective(a: &BinaryMatrix, y: &[f64], s: &[f64], x: &[f64], cfg: &SolverConfig) -> f64 {
    let ax = a.mul_vec(x);
    let residual: f64 = ax.iter().zip(y).map(|(p, q)| (p - q) * (p - q)).sum();
    let (l1, l2) = x.iter().zip(s).fold((0.0, 0.0), |(l1, l2), (xi, si)| {
        let d = xi - si;
        (l1 + d.abs(), l2 + d * d)
    });
    cfg.lambda * l1 + cfg.gamma * residual + cfg.alpha * l2
}

fn soft_threshold(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

fn check_inputs(a: &BinaryMatrix, y: &[f64], s: &[f64], cfg: &SolverConfig) -> Result<()> {
    cfg.validate()?;
    if y.len() != a.n_rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} observations for {} measurement rows",
            y.len(),
            a.n_rows()
        )));
    }
    if s.len() != a.n_cols() {
        return Err(Error::DimensionMismatch(format!(
            "prior has {} entries, matrix has {} columns",
            s.len(),
            a.n_cols()
        )));
    }
    if let Some(i) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput(format!(
            "observation {i} is {}",
            y[i]
        )));
    }
    if let Some(i) = s.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput(format!(
            "prior entry {i} is {}",
            s[i]
        )));
    }
    Ok(())
}

/// Outcome of the elastic-net coordinate descent.
#[derive(Debug, Clone, PartialEq)]
pub struct ElasticNetFit {
    pub beta: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Objective after each sweep.
    pub trace: Vec<f64>,
}

/// Minimises `λ‖β‖₁ + γ‖Aβ − target‖₂² + α‖β‖₂²` from `β = 0`.
///
/// Each coordinate takes its exact minimiser given the others:
/// `β_j = S(2γρ_j, λ) / (2γ‖a_j‖² + 2α)` with `ρ_j = a_jᵀr + ‖a_j‖²β_j`.
pub fn elastic_net(a: &BinaryMatrix, target: &[f64], cfg: &SolverConfig) -> Result<ElasticNetFit> {
    check_inputs(a, target, &vec![0.0; a.n_cols()], cfg)?;
    let n = a.n_cols();
    let mut beta = vec![0.0; n];
    let mut residual = target.to_vec();
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    let two_gamma = 2.0 * cfg.gamma;

    while iterations < cfg.max_iter {
        iterations += 1;
        let mut max_step = 0.0f64;
        for j in 0..n {
            let col = a.col(j);
            let norm_sq = col.len() as f64;
            let denom = two_gamma * norm_sq + 2.0 * cfg.alpha;
            let next = if denom > 0.0 {
                let rho = col.iter().map(|&i| residual[i]).sum::<f64>() + norm_sq * beta[j];
                soft_threshold(two_gamma * rho, cfg.lambda) / denom
            } else {
                0.0
            };
            let step = next - beta[j];
            if step != 0.0 {
                for &i in col {
                    residual[i] -= step;
                }
                beta[j] = next;
                max_step = max_step.max(step.abs());
            }
        }
        let (l1, l2) = beta
            .iter()
            .fold((0.0, 0.0), |(l1, l2), b| (l1 + b.abs(), l2 + b * b));
        let rss: f64 = residual.iter().map(|r| r * r).sum();
        trace.push(cfg.lambda * l1 + cfg.gamma * rss + cfg.alpha * l2);
        if max_step < cfg.tol {
            converged = true;
            break;
        }
    }
    Ok(ElasticNetFit {
        beta,
        iterations,
        converged,
        trace,
    })
}

/// Recovers delays under the betweenness prior.
pub fn solve_cscd(
    a: &BinaryMatrix,
    y: &[f64],
    prior: &PriorVector,
    cfg: &SolverConfig,
) -> Result<RecoveryResult> {
    solve_cscd_traced(a, y, prior, cfg).map(|(r, _)| r)
}

/// [`solve_cscd`] plus the objective value after every sweep.
pub fn solve_cscd_traced(
    a: &BinaryMatrix,
    y: &[f64],
    prior: &PriorVector,
    cfg: &SolverConfig,
) -> Result<(RecoveryResult, Vec<f64>)> {
    let s = &prior.s;
    check_inputs(a, y, s, cfg)?;
    let a_s = a.mul_vec(s);
    let target: Vec<f64> = y.iter().zip(&a_s).map(|(yi, asi)| yi - asi).collect();
    let fit = elastic_net(a, &target, cfg)?;
    let x_hat: Vec<f64> = fit.beta.iter().zip(s).map(|(b, si)| b + si).collect();
    let result = finish(
        a,
        y,
        s,
        prior.max_delay,
        cfg,
        x_hat,
        fit.iterations,
        fit.converged,
    );
    Ok((result, fit.trace))
}

/// Coordinate descent on the centred objective directly in `x`, starting at
/// `x = s`. Same fixed point as [`solve_cscd`], reached without the
/// change of variables.
pub fn solve_cscd_direct(
    a: &BinaryMatrix,
    y: &[f64],
    prior: &PriorVector,
    cfg: &SolverConfig,
) -> Result<RecoveryResult> {
    let s = &prior.s;
    check_inputs(a, y, s, cfg)?;
    let mut x = s.clone();
    let ax = a.mul_vec(&x);
    let mut residual: Vec<f64> = y.iter().zip(&ax).map(|(yi, v)| yi - v).collect();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iter {
        iterations += 1;
        let mut max_step = 0.0f64;
        for (j, &sj) in s.iter().enumerate() {
            let col = a.col(j);
            let norm_sq = col.len() as f64;
            let denom = 2.0 * cfg.gamma * norm_sq + 2.0 * cfg.alpha;
            let next = if denom > 0.0 {
                let rho = col.iter().map(|&i| residual[i]).sum::<f64>() + norm_sq * x[j];
                sj + soft_threshold(2.0 * cfg.gamma * (rho - norm_sq * sj), cfg.lambda) / denom
            } else {
                sj
            };
            let step = next - x[j];
            if step != 0.0 {
                for &i in col {
                    residual[i] -= step;
                }
                x[j] = next;
                max_step = max_step.max(step.abs());
            }
        }
        if max_step < cfg.tol {
            converged = true;
            break;
        }
    }
    Ok(finish(
        a,
        y,
        s,
        prior.max_delay,
        cfg,
        x,
        iterations,
        converged,
    ))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    a: &BinaryMatrix,
    y: &[f64],
    s: &[f64],
    max_delay: f64,
    cfg: &SolverConfig,
    x_hat: Vec<f64>,
    iterations: usize,
    converged: bool,
) -> RecoveryResult {
    RecoveryResult {
        objective_value: objective(a, y, s, &x_hat, cfg),
        congested: label_congested(&x_hat, max_delay, cfg.theta),
        x_hat,
        iterations,
        converged,
    }
}

/// Plain LASSO `λ‖x‖₁ + γ‖Ax − y‖₂²`: the prior program with `s = 0`, `α = 0`.
pub fn solve_lasso(
    a: &BinaryMatrix,
    y: &[f64],
    max_delay: f64,
    cfg: &SolverConfig,
) -> Result<RecoveryResult> {
    let cfg = SolverConfig { alpha: 0.0, ..*cfg };
    solve_cscd(a, y, &PriorVector::zeros(a.n_cols(), max_delay), &cfg)
}

/// The `k` links with the largest betweenness, ties to the lower index.
/// Returned ascending.
pub fn bc_only_rank(bc: &EdgeBetweenness, k: usize) -> Result<Vec<usize>> {
    let n = bc.len();
    if k > n {
        return Err(Error::InvalidSparsity { k, n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| bc.values[j].total_cmp(&bc.values[i]).then(i.cmp(&j)));
    order.truncate(k);
    order.sort_unstable();
    Ok(order)
}

/// `{ j : x_hat[j] >= theta · D }`, ascending.
pub fn label_congested(x_hat: &[f64], max_delay: f64, theta: f64) -> Vec<usize> {
    let cut = theta * max_delay;
    x_hat
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= cut)
        .map(|(j, _)| j)
        .collect()
}
