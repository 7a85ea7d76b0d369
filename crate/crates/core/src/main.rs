use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cscd::harness::{
    consistency_csv, count_from_pct, fmt_num, min_walks_csv, run_consistency_figure,
    run_fscore_vs_sparsity, run_fscore_vs_walks, run_min_walks_for_f50, sweep_csv, sweep_runs_csv,
    Experiment, ExperimentConfig,
};
use cscd::seed::{rng_for, Stream};
use cscd::textio::{format_matrix, format_vector, read_matrix, read_vector, write_text};
use cscd::{
    gen_ground_truth, graph, sample_walks, solve_cscd, solve_lasso, BinaryMatrix, Error,
    MeasurementSet, Result,
};

#[derive(Parser)]
#[command(
    name = "cscd",
    version,
    about = "Congested-link detection from random-walk delay measurements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment config (`key = value` per line); defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Mean F-Score versus number of walks.
    FscoreWalks(Common),
    /// Mean F-Score versus sparsity.
    FscoreSparsity(Common),
    /// Fewest walks reaching mean F-Score 0.5, per sparsity level.
    MinWalks(Common),
    /// IC / EIC satisfaction rates versus number of walks.
    Consistency(Common),
    /// Recover delays from a measurement matrix and observation vector.
    Solve(Common),
    /// Write one simulated instance (edges, matrix, observations, delays,
    /// ready-to-use solve config) into the directory given by --out.
    Simulate(Common),
}

fn load_config(path: Option<&Path>) -> Result<ExperimentConfig> {
    match path {
        Some(p) => ExperimentConfig::read(p),
        None => Ok(ExperimentConfig::default()),
    }
}

/// `out.csv` → `out.runs.csv`
fn runs_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    out.with_file_name(format!("{stem}.runs.csv"))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::FscoreWalks(c) => {
            let exp = Experiment::new(load_config(c.config.as_deref())?, c.seed)?;
            let result = run_fscore_vs_walks(&exp)?;
            write_text(&c.out, &sweep_csv(&result))?;
            write_text(runs_path(&c.out), &sweep_runs_csv(&result))
        }
        Command::FscoreSparsity(c) => {
            let exp = Experiment::new(load_config(c.config.as_deref())?, c.seed)?;
            let result = run_fscore_vs_sparsity(&exp)?;
            write_text(&c.out, &sweep_csv(&result))?;
            write_text(runs_path(&c.out), &sweep_runs_csv(&result))
        }
        Command::MinWalks(c) => {
            let exp = Experiment::new(load_config(c.config.as_deref())?, c.seed)?;
            write_text(&c.out, &min_walks_csv(&run_min_walks_for_f50(&exp)?))
        }
        Command::Consistency(c) => {
            let exp = Experiment::new(load_config(c.config.as_deref())?, c.seed)?;
            write_text(&c.out, &consistency_csv(&run_consistency_figure(&exp)?))
        }
        Command::Solve(c) => solve(&c),
        Command::Simulate(c) => simulate(&c),
    }
}

fn solve(c: &Common) -> Result<()> {
    let cfg = load_config(c.config.as_deref())?;
    let missing = |key: &str| Error::InvalidConfig(format!("solve needs `{key}` in the config"));
    let matrix = cfg.matrix.as_ref().ok_or_else(|| missing("matrix"))?;
    let observations = cfg
        .observations
        .as_ref()
        .ok_or_else(|| missing("observations"))?;
    let exp = Experiment::new(cfg.clone(), c.seed)?;
    let n = exp.n_links();
    let a = BinaryMatrix::from_dense(&read_matrix(matrix)?, n)?;
    let y = read_vector(observations)?;
    let cscd = solve_cscd(&a, &y, &exp.prior, &cfg.solver)?;
    let lasso = solve_lasso(&a, &y, cfg.max_delay, &cfg.solver)?;
    for (name, r) in [("cscd", &cscd), ("lasso", &lasso)] {
        if !r.converged {
            log::warn!(
                "{name} stopped after {} sweeps without converging",
                r.iterations
            );
        }
    }
    let mut out =
        String::from("edge,u,v,betweenness,prior,cscd,lasso,cscd_congested,lasso_congested\n");
    for j in 0..n {
        let (u, v) = exp.graph.edge(j);
        out.push_str(&format!(
            "{j},{},{},{},{},{},{},{},{}\n",
            exp.graph.label(u),
            exp.graph.label(v),
            fmt_num(exp.betweenness.values[j]),
            fmt_num(exp.prior.s[j]),
            fmt_num(cscd.x_hat[j]),
            fmt_num(lasso.x_hat[j]),
            cscd.congested.binary_search(&j).is_ok(),
            lasso.congested.binary_search(&j).is_ok(),
        ));
    }
    write_text(&c.out, &out)
}

fn simulate(c: &Common) -> Result<()> {
    let cfg = load_config(c.config.as_deref())?;
    let exp = Experiment::new(cfg.clone(), c.seed)?;
    let n = exp.n_links();
    let m = count_from_pct(cfg.sparsity_sweep_walks, n);
    let k = count_from_pct(cfg.walks_sweep_sparsity, n);
    let mut truth_rng = rng_for(c.seed, Stream::Truth, 0, k as u64, 0);
    let mut walk_rng = rng_for(c.seed, Stream::Walks, m as u64, k as u64, 0);
    let truth = gen_ground_truth(
        &exp.betweenness,
        k,
        cfg.max_delay,
        cfg.corr_power,
        &mut truth_rng,
    )?;
    let walks = sample_walks(&exp.graph, m, cfg.steps, Default::default(), &mut walk_rng)?;
    let ms = MeasurementSet::simulate(walks, &truth, cfg.sigma(), &mut walk_rng)?;

    std::fs::create_dir_all(&c.out).map_err(|e| Error::Io {
        path: c.out.clone(),
        source: e,
    })?;
    write_text(
        c.out.join("edges.txt"),
        &graph::format_edge_list(&exp.graph),
    )?;
    write_text(c.out.join("matrix.txt"), &format_matrix(&ms.a.to_dense()))?;
    write_text(c.out.join("observations.txt"), &format_vector(&ms.y))?;
    write_text(c.out.join("delays.txt"), &format_vector(&truth.x))?;
    let solve_cfg = format!(
        "topology = edge-list\nedge_list = edges.txt\nmatrix = matrix.txt\nobservations = observations.txt\n\
         max_delay = {}\npreset = {}\nlambda = {}\nalpha = {}\ngamma = {}\ntheta = {}\n",
        cfg.max_delay, cfg.preset, cfg.solver.lambda, cfg.solver.alpha, cfg.solver.gamma, cfg.solver.theta
    );
    write_text(c.out.join("solve.cfg"), &solve_cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
