//! CSV rendering for sweep results.

use std::fmt::Write as _;

use super::sweep::{Method, SweepResult};
use crate::consistency::ConsistencyRate;

/// Minimum walks for F ≥ 0.5 at one sparsity level.
#[derive(Debug, Clone, PartialEq)]
pub struct MinWalksRow {
    pub k_pct: f64,
    pub k: usize,
    pub method: Method,
    /// `None` when no grid point reaches 0.5.
    pub min_m: Option<usize>,
    /// Mean F-Score at every M in the grid.
    pub series: Vec<(usize, f64)>,
}

/// Decimal rendering with at least 12 significant digits.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..15).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let axis = result.axis.column();
    let fixed = match axis {
        "m" => "k",
        _ => "m",
    };
    let mut out = format!("{axis}_pct,{axis},{fixed},method,mean_f,stderr_f,runs\n");
    for r in &result.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_num(r.axis_pct),
            r.axis_value,
            result.fixed_value,
            r.method,
            fmt_num(r.mean_f),
            fmt_num(r.stderr_f),
            r.runs
        )
        .unwrap();
    }
    out
}

/// Per-run outcomes for re-aggregation.
pub fn sweep_runs_csv(result: &SweepResult) -> String {
    let axis = result.axis.column();
    let mut out = format!("{axis},run,method,tp,fp,fn,precision,recall,f_score\n");
    for r in &result.raw {
        let o = &r.outcome;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.axis_value,
            r.run,
            r.method,
            o.tp,
            o.fp,
            o.fn_,
            fmt_num(o.precision),
            fmt_num(o.recall),
            fmt_num(o.f_score)
        )
        .unwrap();
    }
    out
}

/// `min_m` is `NA` when F ≥ 0.5 is never reached.
pub fn min_walks_csv(rows: &[MinWalksRow]) -> String {
    let mut out = String::from("k_pct,k,method,min_m,reached\n");
    for r in rows {
        let m = r.min_m.map_or_else(|| "NA".to_string(), |m| m.to_string());
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(r.k_pct),
            r.k,
            r.method,
            m,
            r.min_m.is_some()
        )
        .unwrap();
    }
    out
}

pub fn consistency_csv(rates: &[ConsistencyRate]) -> String {
    let mut out = String::from("M,ic_rate,eic_rate,runs\n");
    for r in rates {
        writeln!(
            out,
            "{},{},{},{}",
            r.m,
            fmt_num(r.ic_rate),
            fmt_num(r.eic_rate),
            r.runs
        )
        .unwrap();
    }
    out
}
