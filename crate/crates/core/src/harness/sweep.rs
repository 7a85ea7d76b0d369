use std::fmt;

use rayon::prelude::*;

use super::config::{count_from_pct, ExperimentConfig};
use super::report::MinWalksRow;
use crate::consistency::{consistency_probability, ConsistencyConfig, ConsistencyRate, LambdaRule};
use crate::error::Result;
use crate::graph::{edge_betweenness, sample_walks, EdgeBetweenness, Graph, StartPolicy};
use crate::metrics::{score, DetectionOutcome};
use crate::prior::{scale_prior, PriorVector};
use crate::sampling::{gen_ground_truth, MeasurementSet};
use crate::seed::{rng_for, Stream};
use crate::solvers::{bc_only_rank, solve_cscd, solve_lasso};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Cscd,
    Lasso,
    BcOnly,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Cscd, Method::Lasso, Method::BcOnly];

    pub fn name(self) -> &'static str {
        match self {
            Method::Cscd => "cscd",
            Method::Lasso => "lasso",
            Method::BcOnly => "bc_only",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Topology and derived quantities shared by every run of a sweep.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub graph: Graph,
    pub betweenness: EdgeBetweenness,
    pub prior: PriorVector,
}

impl Experiment {
    /// Builds the topology from the master seed and precomputes betweenness
    /// and the prior.
    pub fn new(config: ExperimentConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let graph = config
            .topology
            .build(&mut rng_for(seed, Stream::Topology, 0, 0, 0))?;
        Self::with_graph(config, seed, graph)
    }

    pub fn with_graph(config: ExperimentConfig, seed: u64, graph: Graph) -> Result<Self> {
        config.validate()?;
        let betweenness = edge_betweenness(&graph);
        let prior = scale_prior(&betweenness, config.max_delay)?;
        Ok(Experiment {
            config,
            seed,
            graph,
            betweenness,
            prior,
        })
    }

    pub fn n_links(&self) -> usize {
        self.graph.edge_count()
    }
}

/// Detection quality of the three methods on one instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialScores {
    pub cscd: DetectionOutcome,
    pub lasso: DetectionOutcome,
    pub bc_only: DetectionOutcome,
}

impl TrialScores {
    pub fn get(&self, method: Method) -> &DetectionOutcome {
        match method {
            Method::Cscd => &self.cscd,
            Method::Lasso => &self.lasso,
            Method::BcOnly => &self.bc_only,
        }
    }
}

/// One instance with `m` walks and `k` congested links.
///
/// The ground truth depends only on `(seed, k, run)`, so runs at different
/// `m` share it; walks and noise depend on `(seed, m, k, run)`.
pub fn run_trial(exp: &Experiment, m: usize, k: usize, run: usize) -> Result<TrialScores> {
    let cfg = &exp.config;
    let mut truth_rng = rng_for(exp.seed, Stream::Truth, 0, k as u64, run as u64);
    let mut walk_rng = rng_for(exp.seed, Stream::Walks, m as u64, k as u64, run as u64);
    let truth = gen_ground_truth(
        &exp.betweenness,
        k,
        cfg.max_delay,
        cfg.corr_power,
        &mut truth_rng,
    )?;
    let walks = sample_walks(
        &exp.graph,
        m,
        cfg.steps,
        StartPolicy::Uniform,
        &mut walk_rng,
    )?;
    let ms = MeasurementSet::simulate(walks, &truth, cfg.sigma(), &mut walk_rng)?;
    let cscd = solve_cscd(&ms.a, &ms.y, &exp.prior, &cfg.solver)?;
    let lasso = solve_lasso(&ms.a, &ms.y, cfg.max_delay, &cfg.solver)?;
    let bc = bc_only_rank(&exp.betweenness, truth.sparsity())?;
    Ok(TrialScores {
        cscd: score(&cscd.congested, &truth.support),
        lasso: score(&lasso.congested, &truth.support),
        bc_only: score(&bc, &truth.support),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Number of walks M.
    Walks,
    /// Number of congested links k.
    Sparsity,
}

impl SweepAxis {
    pub fn column(self) -> &'static str {
        match self {
            SweepAxis::Walks => "m",
            SweepAxis::Sparsity => "k",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_pct: f64,
    pub axis_value: usize,
    pub method: Method,
    pub mean_f: f64,
    pub stderr_f: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawRow {
    pub axis_value: usize,
    pub run: usize,
    pub method: Method,
    pub outcome: DetectionOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: SweepAxis,
    /// The quantity held fixed (k for a walks sweep, M for a sparsity sweep).
    pub fixed_value: usize,
    pub rows: Vec<SweepRow>,
    pub raw: Vec<RawRow>,
}

impl SweepResult {
    pub fn mean(&self, axis_value: usize, method: Method) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.axis_value == axis_value && r.method == method)
            .map(|r| r.mean_f)
    }

    pub fn series(&self, method: Method) -> Vec<(usize, f64)> {
        self.rows
            .iter()
            .filter(|r| r.method == method)
            .map(|r| (r.axis_value, r.mean_f))
            .collect()
    }
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs every `(m, k)` point for all runs in parallel; results come back in
/// point order regardless of scheduling.
fn run_points(exp: &Experiment, points: &[(usize, usize)]) -> Result<Vec<Vec<TrialScores>>> {
    let runs = exp.config.runs;
    let tasks: Vec<(usize, usize, usize)> = points
        .iter()
        .flat_map(|&(m, k)| (0..runs).map(move |r| (m, k, r)))
        .collect();
    let scores = tasks
        .par_iter()
        .map(|&(m, k, r)| run_trial(exp, m, k, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(scores.chunks(runs).map(<[_]>::to_vec).collect())
}

fn sweep(
    exp: &Experiment,
    axis: SweepAxis,
    fixed_value: usize,
    grid: &[f64],
) -> Result<SweepResult> {
    let n = exp.n_links();
    let values: Vec<usize> = grid.iter().map(|&p| count_from_pct(p, n)).collect();
    let points: Vec<(usize, usize)> = values
        .iter()
        .map(|&v| match axis {
            SweepAxis::Walks => (v, fixed_value),
            SweepAxis::Sparsity => (fixed_value, v),
        })
        .collect();
    let per_point = run_points(exp, &points)?;
    let mut rows = Vec::new();
    let mut raw = Vec::new();
    for ((&pct, &value), trials) in grid.iter().zip(&values).zip(&per_point) {
        for method in Method::ALL {
            let f: Vec<f64> = trials.iter().map(|t| t.get(method).f_score).collect();
            let (mean_f, stderr_f) = mean_and_stderr(&f);
            rows.push(SweepRow {
                axis_pct: pct,
                axis_value: value,
                method,
                mean_f,
                stderr_f,
                runs: trials.len(),
            });
            raw.extend(trials.iter().enumerate().map(|(run, t)| RawRow {
                axis_value: value,
                run,
                method,
                outcome: *t.get(method),
            }));
        }
    }
    Ok(SweepResult {
        axis,
        fixed_value,
        rows,
        raw,
    })
}

/// Mean F-Score of each method as the number of walks varies, at the
/// configured fixed sparsity.
pub fn run_fscore_vs_walks(exp: &Experiment) -> Result<SweepResult> {
    let cfg = &exp.config;
    let k = count_from_pct(cfg.walks_sweep_sparsity, exp.n_links());
    sweep(exp, SweepAxis::Walks, k, &cfg.m_grid)
}

/// Mean F-Score of each method as sparsity varies, at the configured fixed
/// number of walks.
pub fn run_fscore_vs_sparsity(exp: &Experiment) -> Result<SweepResult> {
    let cfg = &exp.config;
    let m = count_from_pct(cfg.sparsity_sweep_walks, exp.n_links());
    sweep(exp, SweepAxis::Sparsity, m, &cfg.sparsity_grid)
}

/// Smallest `m` whose mean F-Score reaches 0.5; `series` must be ordered by
/// increasing `m`.
pub fn min_walks_from_means(series: &[(usize, f64)]) -> Option<usize> {
    series.iter().find(|&&(_, f)| f >= 0.5).map(|&(m, _)| m)
}

/// For each sparsity level, the fewest walks in the grid at which each
/// method's mean F-Score reaches 0.5.
pub fn run_min_walks_for_f50(exp: &Experiment) -> Result<Vec<MinWalksRow>> {
    let cfg = &exp.config;
    let n = exp.n_links();
    let mut m_values: Vec<usize> = cfg.m_grid.iter().map(|&p| count_from_pct(p, n)).collect();
    m_values.sort_unstable();
    let k_values: Vec<(f64, usize)> = cfg
        .sparsity_grid
        .iter()
        .map(|&p| (p, count_from_pct(p, n)))
        .collect();
    let points: Vec<(usize, usize)> = k_values
        .iter()
        .flat_map(|&(_, k)| m_values.iter().map(move |&m| (m, k)))
        .collect();
    let per_point = run_points(exp, &points)?;
    let mut rows = Vec::new();
    for (ki, &(pct, k)) in k_values.iter().enumerate() {
        let block = &per_point[ki * m_values.len()..(ki + 1) * m_values.len()];
        for method in Method::ALL {
            let series: Vec<(usize, f64)> = m_values
                .iter()
                .zip(block)
                .map(|(&m, trials)| {
                    let f: Vec<f64> = trials.iter().map(|t| t.get(method).f_score).collect();
                    (m, mean_and_stderr(&f).0)
                })
                .collect();
            rows.push(MinWalksRow {
                k_pct: pct,
                k,
                method,
                min_m: min_walks_from_means(&series),
                series,
            });
        }
    }
    Ok(rows)
}

/// IC and EIC satisfaction rates over the walk grid with `λ = √M ln M`.
pub fn run_consistency_figure(exp: &Experiment) -> Result<Vec<ConsistencyRate>> {
    let cfg = &exp.config;
    let n = exp.n_links();
    let ccfg = ConsistencyConfig {
        k: cfg.consistency_k.min(n),
        m_values: cfg.m_grid.iter().map(|&p| count_from_pct(p, n)).collect(),
        runs: cfg.runs,
        steps: cfg.steps,
        lambda_rule: LambdaRule::SqrtMLogM,
        alpha: cfg.solver.alpha,
        eta: cfg.eta,
        corr_power: cfg.corr_power,
        max_delay: cfg.max_delay,
    };
    consistency_probability(&exp.graph, &ccfg, exp.seed)
}
