//! Ground-truth delay states, the binary measurement matrix and noisy
//! end-to-end observations.

use log::warn;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::graph::{EdgeBetweenness, WalkPath};

/// Weight floor so that links with zero betweenness can still be congested.
pub const SUPPORT_WEIGHT_FLOOR: f64 = 1e-6;

/// Binary M×N matrix stored as sorted row and column supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    n_cols: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl BinaryMatrix {
    /// Builds from per-row column indices. Duplicates within a row collapse.
    pub fn from_rows(rows: Vec<Vec<usize>>, n_cols: usize) -> Result<Self> {
        let mut cols = vec![Vec::new(); n_cols];
        let mut clean = Vec::with_capacity(rows.len());
        for (i, mut row) in rows.into_iter().enumerate() {
            row.sort_unstable();
            row.dedup();
            if let Some(&j) = row.last() {
                if j >= n_cols {
                    return Err(Error::EdgeIndexOutOfRange {
                        index: j,
                        n_edges: n_cols,
                    });
                }
            }
            for &j in &row {
                cols[j].push(i);
            }
            clean.push(row);
        }
        Ok(BinaryMatrix {
            n_cols,
            rows: clean,
            cols,
        })
    }

    /// Builds from a dense 0/1 table; any nonzero entry counts as 1.
    pub fn from_dense(dense: &[Vec<f64>], n_cols: usize) -> Result<Self> {
        let rows = dense
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != n_cols {
                    return Err(Error::DimensionMismatch(format!(
                        "row {i} has {} entries, expected {n_cols}",
                        row.len()
                    )));
                }
                Ok(row
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0.0)
                    .map(|(j, _)| j)
                    .collect())
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::from_rows(rows, n_cols)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Column indices set in row `i`, ascending.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    /// Row indices set in column `j`, ascending.
    pub fn col(&self, j: usize) -> &[usize] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&j).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `A·x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n_cols);
        self.rows
            .iter()
            .map(|row| row.iter().map(|&j| x[j]).sum())
            .collect()
    }

    /// `Aᵀ·r`.
    pub fn tr_mul_vec(&self, r: &[f64]) -> Vec<f64> {
        debug_assert_eq!(r.len(), self.rows.len());
        self.cols
            .iter()
            .map(|col| col.iter().map(|&i| r[i]).sum())
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0.0; self.n_cols];
                for &j in row {
                    dense[j] = 1.0;
                }
                dense
            })
            .collect()
    }

    /// Same matrix with rows reordered so that new row `i` is old row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let rows = perm.iter().map(|&i| self.rows[i].clone()).collect();
        Self::from_rows(rows, self.n_cols).expect("permuted rows stay in range")
    }
}

/// Membership matrix of a set of walks: `A[i][j] = 1` iff walk `i` crossed edge `j`.
pub fn build_matrix(walks: &[WalkPath], n_edges: usize) -> Result<BinaryMatrix> {
    BinaryMatrix::from_rows(walks.iter().map(|w| w.edges.clone()).collect(), n_edges)
}

/// Ground-truth link delays.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayState {
    pub x: Vec<f64>,
    /// Congested edge indices, ascending.
    pub support: Vec<usize>,
    pub max_delay: f64,
}

impl DelayState {
    pub fn sparsity(&self) -> usize {
        self.support.len()
    }
}

/// Draws a k-sparse delay vector whose support leans towards high-betweenness
/// links.
///
/// The support is drawn without replacement, each remaining link weighted by
/// `(b_i / B)^corr_power + 1e-6`; `corr_power = 0` is uniform. Congested
/// delays are uniform on `[D/2, D]`.
pub fn gen_ground_truth<R: Rng + ?Sized>(
    bc: &EdgeBetweenness,
    k: usize,
    max_delay: f64,
    corr_power: f64,
    rng: &mut R,
) -> Result<DelayState> {
    let n = bc.len();
    if k > n {
        return Err(Error::InvalidSparsity { k, n });
    }
    if !(max_delay > 0.0 && max_delay.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "max delay must be positive, got {max_delay}"
        )));
    }
    if !(corr_power >= 0.0 && corr_power.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "correlation power must be non-negative, got {corr_power}"
        )));
    }
    if bc.max_value <= 0.0 {
        return Err(Error::ZeroMaxBetweenness);
    }
    if 2 * k > n {
        warn!("sparsity {k} exceeds half of the {n} links");
    }
    let mut weights = support_weights(bc, corr_power);
    let mut support = Vec::with_capacity(k);
    for _ in 0..k {
        let total: f64 = weights.iter().sum();
        let mut target = rng.random::<f64>() * total;
        let mut pick = None;
        for (j, &w) in weights.iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            pick = Some(j);
            if target < w {
                break;
            }
            target -= w;
        }
        // rounding can run past the end; `pick` then holds the last live link
        let j = pick.expect("k <= n leaves a link with positive weight");
        weights[j] = 0.0;
        support.push(j);
    }
    support.sort_unstable();
    let mut x = vec![0.0; n];
    for &j in &support {
        x[j] = rng.random_range(max_delay / 2.0..=max_delay);
    }
    Ok(DelayState {
        x,
        support,
        max_delay,
    })
}

/// Per-link support sampling weights `(b_i / B)^p + floor`.
pub fn support_weights(bc: &EdgeBetweenness, corr_power: f64) -> Vec<f64> {
    bc.values
        .iter()
        .map(|&b| (b / bc.max_value).powf(corr_power) + SUPPORT_WEIGHT_FLOOR)
        .collect()
}

/// `y = A·x + ε` with `ε ~ N(0, sigma² I)`.
pub fn observe<R: Rng + ?Sized>(
    a: &BinaryMatrix,
    x: &[f64],
    sigma: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if x.len() != a.n_cols() {
        return Err(Error::DimensionMismatch(format!(
            "delay vector has {} entries, matrix has {} columns",
            x.len(),
            a.n_cols()
        )));
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "noise sigma must be >= 0, got {sigma}"
        )));
    }
    let mut y = a.mul_vec(x);
    if sigma > 0.0 {
        let noise = Normal::new(0.0, sigma).expect("sigma checked above");
        for v in &mut y {
            *v += noise.sample(rng);
        }
    }
    Ok(y)
}

/// Measurement matrix, observations and the walks that produced them.
#[derive(Debug, Clone)]
pub struct MeasurementSet {
    pub a: BinaryMatrix,
    pub y: Vec<f64>,
    pub sigma: f64,
    pub walks: Vec<WalkPath>,
}

impl MeasurementSet {
    pub fn simulate<R: Rng + ?Sized>(
        walks: Vec<WalkPath>,
        state: &DelayState,
        sigma: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let a = build_matrix(&walks, state.x.len())?;
        let y = observe(&a, &state.x, sigma, rng)?;
        Ok(MeasurementSet { a, y, sigma, walks })
    }
}
