mod common;

use common::{dense, kkt_violation, random_binary, rel_diff, sign_enumeration_oracle, Weights};
use cscd::graph::topology::scale_free;
use cscd::graph::StartPolicy;
use cscd::solvers::{solve_cscd_traced, SolverConfig, SolverPreset};
use cscd::{
    build_matrix, edge_betweenness, sample_walks, scale_prior, solve_cscd, solve_lasso,
    BinaryMatrix, PriorVector,
};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_prior(n: usize, rng: &mut ChaCha8Rng) -> PriorVector {
    PriorVector {
        s: (0..n).map(|_| rng.random_range(0.0..1.0)).collect(),
        max_delay: 1.0,
        max_betweenness: 1.0,
    }
}

fn weights(cfg: &SolverConfig) -> Weights {
    Weights {
        lambda: cfg.lambda,
        gamma: cfg.gamma,
        alpha: cfg.alpha,
    }
}

#[test]
fn objective_trace_never_increases() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for idx in 0..40usize {
        let n = rng.random_range(2..20);
        let a = random_binary(rng.random_range(1..15), n, &mut rng);
        let y: Vec<f64> = (0..a.n_rows())
            .map(|_| rng.random_range(0.0..3.0))
            .collect();
        let prior = random_prior(n, &mut rng);
        let preset = if idx.is_multiple_of(2) {
            SolverPreset::Weak
        } else {
            SolverPreset::Unit
        };
        let cfg = SolverConfig {
            max_iter: 5000,
            ..preset.config()
        };
        let (_, trace) = solve_cscd_traced(&a, &y, &prior, &cfg).unwrap();
        for w in trace.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-15, "{} -> {}", w[0], w[1]);
        }
    }
}

#[test]
fn matches_exact_minimiser_with_ridge() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let n = rng.random_range(1..7);
        let a = random_binary(rng.random_range(1..7), n, &mut rng);
        let y: Vec<f64> = (0..a.n_rows())
            .map(|_| rng.random_range(0.0..2.0))
            .collect();
        let prior = random_prior(n, &mut rng);
        let cfg = SolverConfig {
            lambda: rng.random_range(0.01..1.0),
            gamma: 1.0,
            alpha: rng.random_range(0.05..1.0),
            ..SolverPreset::Unit.config()
        };
        let got = solve_cscd(&a, &y, &prior, &cfg).unwrap();
        assert!(got.converged);
        let (exact, x) = sign_enumeration_oracle(
            &dense(&a),
            &DVector::from_column_slice(&y),
            &DVector::from_column_slice(&prior.s),
            weights(&cfg),
        );
        assert!(rel_diff(got.objective_value, exact) < 1e-9);
        for (g, e) in got.x_hat.iter().zip(x.iter()) {
            assert!((g - e).abs() < 1e-6, "{g} vs {e}");
        }
    }
}

#[test]
fn huge_lambda_returns_the_prior() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let a = random_binary(5, 6, &mut rng);
    let y: Vec<f64> = (0..5).map(|_| rng.random_range(0.0..2.0)).collect();
    let prior = random_prior(6, &mut rng);
    let cfg = SolverConfig {
        lambda: 1e9,
        ..SolverPreset::Unit.config()
    };
    assert_eq!(solve_cscd(&a, &y, &prior, &cfg).unwrap().x_hat, prior.s);
    assert!(solve_lasso(&a, &y, 1.0, &cfg)
        .unwrap()
        .x_hat
        .iter()
        .all(|&v| v == 0.0));
}

#[test]
fn noiseless_invertible_system_is_recovered() {
    // lower-triangular ones: invertible over the reals
    let n = 6;
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..=i).collect()).collect();
    let a = BinaryMatrix::from_rows(rows, n).unwrap();
    let x_true = [0.0, 0.8, 0.0, 0.0, 0.6, 0.0];
    let y = a.mul_vec(&x_true);
    let cfg = SolverConfig {
        lambda: 1e-8,
        alpha: 0.0,
        max_iter: 1_000_000,
        tol: 1e-13,
        ..SolverPreset::Unit.config()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let prior = random_prior(n, &mut rng);
    let r = solve_cscd(&a, &y, &prior, &cfg).unwrap();
    for (g, t) in r.x_hat.iter().zip(&x_true) {
        assert!((g - t).abs() < 1e-5, "{g} vs {t}");
    }
    assert_eq!(r.congested, vec![1, 4]);
}

#[test]
fn lasso_is_the_zero_prior_special_case() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let a = random_binary(8, 10, &mut rng);
    let y: Vec<f64> = (0..8).map(|_| rng.random_range(0.0..2.0)).collect();
    let cfg = SolverPreset::Unit.config();
    let lasso = solve_lasso(&a, &y, 1.0, &cfg).unwrap();
    let zero = SolverConfig { alpha: 0.0, ..cfg };
    let cscd = solve_cscd(&a, &y, &PriorVector::zeros(10, 1.0), &zero).unwrap();
    assert_eq!(lasso.x_hat, cscd.x_hat);
}

#[test]
fn kkt_holds_on_walk_measurements() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let g = scale_free(30, 2, &mut rng).unwrap();
    let bc = edge_betweenness(&g);
    let prior = scale_prior(&bc, 1.0).unwrap();
    let walks = sample_walks(&g, 40, 15, StartPolicy::Uniform, &mut rng).unwrap();
    let a = build_matrix(&walks, g.edge_count()).unwrap();
    let x: Vec<f64> = (0..g.edge_count())
        .map(|j| if j % 9 == 0 { 0.8 } else { 0.0 })
        .collect();
    let y = a.mul_vec(&x);
    let cfg = SolverPreset::Unit.config();
    let r = solve_cscd(&a, &y, &prior, &cfg).unwrap();
    assert!(r.converged);
    let v = kkt_violation(
        &dense(&a),
        &DVector::from_column_slice(&y),
        &DVector::from_column_slice(&prior.s),
        &DVector::from_column_slice(&r.x_hat),
        weights(&cfg),
    );
    // the stopping rule bounds step size, so the gradient residual scales
    // with the column curvature
    let curvature = (0..a.n_cols()).map(|j| a.col(j).len()).max().unwrap() as f64;
    assert!(v <= 10.0 * cfg.tol * curvature, "violation {v}");
}
