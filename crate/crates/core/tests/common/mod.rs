//! Independent oracles shared by the integration and acceptance suites.
//!
//! Nothing here calls into the solver or betweenness code paths it checks:
//! objectives are re-evaluated from dense matrices, betweenness is counted
//! by explicit path enumeration, and optima come from separate algorithms.

#![allow(dead_code)]

use cscd::{BinaryMatrix, Graph};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// Random connected simple graph on `n` nodes: a random spanning tree plus
/// each remaining pair with probability `extra`.
pub fn random_connected_graph<R: Rng>(n: usize, extra: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let present = edges
                .iter()
                .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
            if !present && rng.random_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Edge betweenness by enumerating every shortest path of every unordered
/// pair (Floyd–Warshall distances, explicit DFS over geodesics).
pub fn brute_force_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    const INF: usize = usize::MAX / 4;
    let mut dist = vec![vec![INF; n]; n];
    for v in 0..n {
        dist[v][v] = 0;
    }
    for &(u, v) in g.edges() {
        dist[u][v] = 1;
        dist[v][u] = 1;
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                if dist[u][w] + dist[w][v] < dist[u][v] {
                    dist[u][v] = dist[u][w] + dist[w][v];
                }
            }
        }
    }
    let mut values = vec![0.0; g.edge_count()];
    for s in 0..n {
        for t in (s + 1)..n {
            if dist[s][t] >= INF {
                continue;
            }
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![(s, Vec::new())];
            while let Some((v, used)) = stack.pop() {
                if v == t {
                    paths.push(used);
                    continue;
                }
                for &(w, e) in g.neighbors(v) {
                    if dist[s][w] == dist[s][v] + 1 && dist[w][t] + 1 == dist[v][t] {
                        let mut next = used.clone();
                        next.push(e);
                        stack.push((w, next));
                    }
                }
            }
            let share = 1.0 / paths.len() as f64;
            for path in &paths {
                for &e in path {
                    values[e] += share;
                }
            }
        }
    }
    values
}

/// Random binary matrix whose rows each have at least one nonzero.
pub fn random_binary<R: Rng>(m: usize, n: usize, rng: &mut R) -> BinaryMatrix {
    let rows = (0..m)
        .map(|_| {
            let mut row: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.4)).collect();
            if row.is_empty() {
                row.push(rng.random_range(0..n));
            }
            row
        })
        .collect();
    BinaryMatrix::from_rows(rows, n).unwrap()
}

pub fn dense(a: &BinaryMatrix) -> DMatrix<f64> {
    let mut d = DMatrix::zeros(a.n_rows(), a.n_cols());
    for i in 0..a.n_rows() {
        for j in 0..a.n_cols() {
            if a.get(i, j) {
                d[(i, j)] = 1.0;
            }
        }
    }
    d
}

#[derive(Debug, Clone, Copy)]
pub struct Weights {
    pub lambda: f64,
    pub gamma: f64,
    pub alpha: f64,
}

/// `λ‖x − s‖₁ + γ‖Ax − y‖² + α‖x − s‖²` on dense data.
pub fn dense_objective(
    a: &DMatrix<f64>,
    y: &DVector<f64>,
    s: &DVector<f64>,
    x: &DVector<f64>,
    w: Weights,
) -> f64 {
    let r = a * x - y;
    let d = x - s;
    w.lambda * d.iter().map(|v| v.abs()).sum::<f64>()
        + w.gamma * r.norm_squared()
        + w.alpha * d.norm_squared()
}

/// Per-coordinate subgradient violation of the centred objective at `x`.
pub fn kkt_violation(
    a: &DMatrix<f64>,
    y: &DVector<f64>,
    s: &DVector<f64>,
    x: &DVector<f64>,
    w: Weights,
) -> f64 {
    let g = a.transpose() * (a * x - y);
    let mut worst = 0.0f64;
    for j in 0..x.len() {
        let d = x[j] - s[j];
        let smooth = 2.0 * w.gamma * g[j] + 2.0 * w.alpha * d;
        let v = if d != 0.0 {
            (w.lambda * d.signum() + smooth).abs()
        } else {
            ((2.0 * w.gamma * g[j]).abs() - w.lambda).max(0.0)
        };
        worst = worst.max(v);
    }
    worst
}

/// Accelerated projected gradient on the split `x − s = u − v`, `u, v ≥ 0`,
/// which turns the ℓ1 term into the linear `λ·1ᵀ(u + v)`. Restarts momentum
/// whenever the objective goes up. Returns the best objective and point.
pub fn projected_gradient_oracle(
    a: &DMatrix<f64>,
    y: &DVector<f64>,
    s: &DVector<f64>,
    w: Weights,
    max_iter: usize,
) -> (f64, DVector<f64>) {
    let n = a.ncols();
    let target = y - a * s;
    let ata = a.transpose() * a;
    let aty = a.transpose() * &target;
    // Hessian of the smooth part in β is 2(γAᵀA + αI); in (u, v) the norm doubles
    let top = ata
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, &e| m.max(e));
    let lipschitz = 4.0 * (w.gamma * top + w.alpha) + 1e-12;
    let step = 1.0 / lipschitz;

    let f = |u: &DVector<f64>, v: &DVector<f64>| {
        let beta = u - v;
        let r = a * &beta - &target;
        w.lambda * (u.sum() + v.sum()) + w.gamma * r.norm_squared() + w.alpha * beta.norm_squared()
    };
    let grad_beta =
        |beta: &DVector<f64>| 2.0 * w.gamma * (&ata * beta - &aty) + 2.0 * w.alpha * beta;

    let mut u = DVector::zeros(n);
    let mut v = DVector::zeros(n);
    let (mut pu, mut pv) = (u.clone(), v.clone());
    let mut t = 1.0f64;
    let mut best = f(&u, &v);
    let mut best_beta = DVector::zeros(n);
    let mut last = best;
    for _ in 0..max_iter {
        let gb = grad_beta(&(&pu - &pv));
        let nu = (&pu - step * gb.add_scalar(w.lambda)).map(|c| c.max(0.0));
        let nv = (&pv - step * (-&gb).add_scalar(w.lambda)).map(|c| c.max(0.0));
        let val = f(&nu, &nv);
        if val > last {
            // restart from the last accepted iterate
            t = 1.0;
            pu = u.clone();
            pv = v.clone();
            continue;
        }
        let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
        let mom = (t - 1.0) / t_next;
        pu = &nu + mom * (&nu - &u);
        pv = &nv + mom * (&nv - &v);
        u = nu;
        v = nv;
        t = t_next;
        last = val;
        if val < best {
            best = val;
            best_beta = &u - &v;
        }
        if best == 0.0 {
            break;
        }
    }
    (best, best_beta + s)
}

/// Exact minimiser by enumerating sign patterns of `β = x − s`: for each
/// pattern the stationarity equations are linear, and the optimum is the
/// candidate with the smallest objective. Needs `α > 0` (or full column
/// rank) to keep every restricted system solvable; `N` must be small.
pub fn sign_enumeration_oracle(
    a: &DMatrix<f64>,
    y: &DVector<f64>,
    s: &DVector<f64>,
    w: Weights,
) -> (f64, DVector<f64>) {
    let n = a.ncols();
    let target = y - a * s;
    let mut best = (f64::INFINITY, s.clone());
    let patterns = 3usize.pow(n as u32);
    for code in 0..patterns {
        let mut sign = vec![0.0; n];
        let mut c = code;
        for sj in sign.iter_mut() {
            *sj = [0.0, 1.0, -1.0][c % 3];
            c /= 3;
        }
        let active: Vec<usize> = (0..n).filter(|&j| sign[j] != 0.0).collect();
        let mut beta = DVector::zeros(n);
        if !active.is_empty() {
            let sub = a.select_columns(&active);
            let lhs = 2.0 * w.gamma * sub.transpose() * &sub
                + 2.0 * w.alpha * DMatrix::identity(active.len(), active.len());
            let rhs = 2.0 * w.gamma * sub.transpose() * &target
                - w.lambda * DVector::from_iterator(active.len(), active.iter().map(|&j| sign[j]));
            let Some(sol) = lhs.lu().solve(&rhs) else {
                continue;
            };
            for (p, &j) in active.iter().enumerate() {
                beta[j] = sol[p];
            }
        }
        let x = &beta + s;
        let val = dense_objective(a, y, s, &x, w);
        if val < best.0 {
            best = (val, x);
        }
    }
    best
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
