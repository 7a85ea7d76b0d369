//! Irrepresentable conditions for LASSO (IC) and the elastic net (EIC).
//!
//! With the support columns of `A` gathered first, `C₁₁ = AᵀA/M` restricted
//! to the support and `C₂₁` the off-support × support block,
//!
//! ```text
//! IC : ‖C₂₁ C₁₁⁻¹ sign(x₁)‖∞ ≤ 1 − η
//! EIC: ‖C₂₁ (C₁₁ + (α/M) I)⁻¹ (sign(x₁) + (2α/λ) x₁)‖∞ ≤ 1 − η
//! ```

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{edge_betweenness, sample_walks, EdgeBetweenness, Graph, StartPolicy};
use crate::sampling::{build_matrix, gen_ground_truth, BinaryMatrix};
use crate::seed::{rng_for, Stream};

/// Eigenvalues at or below this fraction of the largest one count as zero.
const SINGULAR_RTOL: f64 = 1e-10;

/// Gram blocks of the measurement matrix split by a support set.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedGram {
    /// k×k support block.
    pub c11: DMatrix<f64>,
    /// (N−k)×k off-support/support block.
    pub c21: DMatrix<f64>,
    /// Support column indices, in the order used for the blocks.
    pub support: Vec<usize>,
    /// Off-support column indices, ascending.
    pub off_support: Vec<usize>,
    /// Number of measurements M.
    pub m: usize,
}

impl PartitionedGram {
    pub fn new(a: &BinaryMatrix, support: &[usize]) -> Result<Self> {
        let m = a.n_rows();
        let n = a.n_cols();
        if m == 0 {
            return Err(Error::DimensionMismatch("no measurements".into()));
        }
        // position of each column in its block: Ok(p) support, Err(p) off-support
        let mut slot: Vec<Option<std::result::Result<usize, usize>>> = vec![None; n];
        for (p, &j) in support.iter().enumerate() {
            if j >= n {
                return Err(Error::EdgeIndexOutOfRange {
                    index: j,
                    n_edges: n,
                });
            }
            if slot[j].is_some() {
                return Err(Error::InvalidConfig(format!(
                    "support lists edge {j} twice"
                )));
            }
            slot[j] = Some(Ok(p));
        }
        let mut off_support = Vec::with_capacity(n - support.len());
        for (j, s) in slot.iter_mut().enumerate() {
            if s.is_none() {
                *s = Some(Err(off_support.len()));
                off_support.push(j);
            }
        }
        let k = support.len();
        let mut c11 = DMatrix::zeros(k, k);
        let mut c21 = DMatrix::zeros(off_support.len(), k);
        let mut on = Vec::new();
        let mut off = Vec::new();
        for i in 0..m {
            on.clear();
            off.clear();
            for &j in a.row(i) {
                match slot[j] {
                    Some(Ok(p)) => on.push(p),
                    Some(Err(q)) => off.push(q),
                    None => unreachable!(),
                }
            }
            for &p in &on {
                for &p2 in &on {
                    c11[(p, p2)] += 1.0;
                }
                for &q in &off {
                    c21[(q, p)] += 1.0;
                }
            }
        }
        let scale = 1.0 / m as f64;
        c11 *= scale;
        c21 *= scale;
        Ok(PartitionedGram {
            c11,
            c21,
            support: support.to_vec(),
            off_support,
            m,
        })
    }

    pub fn k(&self) -> usize {
        self.support.len()
    }

    /// Support/off-support block, the transpose of `c21`.
    pub fn c12(&self) -> DMatrix<f64> {
        self.c21.transpose()
    }
}

/// Left-hand side of a condition and its verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionCheck {
    pub lhs: f64,
    pub holds: bool,
}

fn signum(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `‖C₂₁ (C₁₁ + ridge·I)⁻¹ v‖∞`.
fn irrepresentable_lhs(pg: &PartitionedGram, ridge: f64, v: &DVector<f64>) -> Result<f64> {
    let k = pg.k();
    if k == 0 || pg.c21.nrows() == 0 {
        return Ok(0.0);
    }
    let mut gram = pg.c11.clone();
    for p in 0..k {
        gram[(p, p)] += ridge;
    }
    let eig = gram.symmetric_eigen();
    let top = eig.eigenvalues.iter().fold(0.0f64, |m, &e| m.max(e.abs()));
    if eig.eigenvalues.iter().any(|&e| e <= SINGULAR_RTOL * top) || top == 0.0 {
        return Err(Error::SingularC11);
    }
    // Q diag(1/e) Qᵀ v
    let q = &eig.eigenvectors;
    let mut coeff = q.transpose() * v;
    for (c, e) in coeff.iter_mut().zip(eig.eigenvalues.iter()) {
        *c /= e;
    }
    let solved = q * coeff;
    let w = &pg.c21 * solved;
    let lhs = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if !lhs.is_finite() {
        return Err(Error::NonFiniteInput(
            "irrepresentable product is not finite".into(),
        ));
    }
    Ok(lhs)
}

/// IC check. `x1` holds the support values (only their signs matter), in
/// the order of `pg.support`.
pub fn check_ic(pg: &PartitionedGram, x1: &[f64], eta: f64) -> Result<ConditionCheck> {
    check_eic(pg, x1, 1.0, 0.0, eta)
}

/// EIC check. `alpha = 0` reduces to [`check_ic`] exactly.
pub fn check_eic(
    pg: &PartitionedGram,
    x1: &[f64],
    lambda: f64,
    alpha: f64,
    eta: f64,
) -> Result<ConditionCheck> {
    if x1.len() != pg.k() {
        return Err(Error::DimensionMismatch(format!(
            "{} support values for a support of size {}",
            x1.len(),
            pg.k()
        )));
    }
    for (what, v) in [("lambda", lambda), ("alpha", alpha), ("eta", eta)] {
        if !v.is_finite() {
            return Err(Error::NonFiniteInput(format!("{what} is {v}")));
        }
    }
    if let Some(v) = x1.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput(format!("support value {v}")));
    }
    let tilt = if alpha == 0.0 {
        0.0
    } else {
        2.0 * alpha / lambda
    };
    if !tilt.is_finite() {
        return Err(Error::NonFiniteInput(format!(
            "2·alpha/lambda is not finite (alpha={alpha}, lambda={lambda})"
        )));
    }
    let v = DVector::from_iterator(x1.len(), x1.iter().map(|&x| signum(x) + tilt * x));
    let lhs = irrepresentable_lhs(pg, alpha / pg.m as f64, &v)?;
    Ok(ConditionCheck {
        lhs,
        holds: lhs <= 1.0 - eta,
    })
}

/// How λ is chosen for a given number of measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaRule {
    /// `λ = √M · ln M`.
    SqrtMLogM,
    Fixed(f64),
}

impl LambdaRule {
    pub fn lambda(self, m: usize) -> f64 {
        match self {
            LambdaRule::SqrtMLogM => {
                let m = m as f64;
                m.sqrt() * m.ln()
            }
            LambdaRule::Fixed(l) => l,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyConfig {
    /// Support size.
    pub k: usize,
    /// Numbers of walks to evaluate.
    pub m_values: Vec<usize>,
    pub runs: usize,
    pub steps: usize,
    pub lambda_rule: LambdaRule,
    pub alpha: f64,
    pub eta: f64,
    pub corr_power: f64,
    pub max_delay: f64,
}

/// One trial's outcome. A singular `C₁₁` makes the IC check fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub ic: Option<ConditionCheck>,
    pub eic: Option<ConditionCheck>,
}

impl TrialOutcome {
    pub fn ic_holds(&self) -> bool {
        self.ic.is_some_and(|c| c.holds)
    }

    pub fn eic_holds(&self) -> bool {
        self.eic.is_some_and(|c| c.holds)
    }
}

/// Runs both checks on one sampled measurement ensemble.
pub fn consistency_trial(
    g: &Graph,
    bc: &EdgeBetweenness,
    cfg: &ConsistencyConfig,
    m: usize,
    seed: u64,
    run: usize,
) -> Result<TrialOutcome> {
    let mut truth_rng = rng_for(
        seed,
        Stream::Consistency,
        m as u64,
        cfg.k as u64,
        run as u64,
    );
    let mut walk_rng = rng_for(seed, Stream::Walks, m as u64, cfg.k as u64, run as u64);
    let walks = sample_walks(g, m, cfg.steps, StartPolicy::Uniform, &mut walk_rng)?;
    let a = build_matrix(&walks, g.edge_count())?;
    let truth = gen_ground_truth(bc, cfg.k, cfg.max_delay, cfg.corr_power, &mut truth_rng)?;
    let pg = PartitionedGram::new(&a, &truth.support)?;
    let x1: Vec<f64> = truth.support.iter().map(|&j| truth.x[j]).collect();
    let lambda = cfg.lambda_rule.lambda(m);
    let tolerate_singular = |r: Result<ConditionCheck>| match r {
        Ok(c) => Ok(Some(c)),
        Err(Error::SingularC11) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(TrialOutcome {
        ic: tolerate_singular(check_ic(&pg, &x1, cfg.eta))?,
        eic: tolerate_singular(check_eic(&pg, &x1, lambda, cfg.alpha, cfg.eta))?,
    })
}

/// Satisfaction rates at one M.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyRate {
    pub m: usize,
    pub ic_rate: f64,
    pub eic_rate: f64,
    pub runs: usize,
}

/// Fraction of trials satisfying IC and EIC for every M in the config.
pub fn consistency_probability(
    g: &Graph,
    cfg: &ConsistencyConfig,
    seed: u64,
) -> Result<Vec<ConsistencyRate>> {
    if cfg.runs == 0 {
        return Err(Error::InvalidCount("runs must be at least 1".into()));
    }
    let bc = edge_betweenness(g);
    let tasks: Vec<(usize, usize)> = cfg
        .m_values
        .iter()
        .flat_map(|&m| (0..cfg.runs).map(move |r| (m, r)))
        .collect();
    let outcomes = tasks
        .par_iter()
        .map(|&(m, run)| consistency_trial(g, &bc, cfg, m, seed, run))
        .collect::<Result<Vec<_>>>()?;
    Ok(cfg
        .m_values
        .iter()
        .zip(outcomes.chunks(cfg.runs))
        .map(|(&m, chunk)| {
            let runs = chunk.len();
            let ic = chunk.iter().filter(|t| t.ic_holds()).count();
            let eic = chunk.iter().filter(|t| t.eic_holds()).count();
            ConsistencyRate {
                m,
                ic_rate: ic as f64 / runs as f64,
                eic_rate: eic as f64 / runs as f64,
                runs,
            }
        })
        .collect())
}
