//! Detection quality over congested-link sets.

use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionOutcome {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_score: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Precision, recall and their harmonic mean; every ratio with an empty
/// denominator is 0.
pub fn score(detected: &[usize], truth: &[usize]) -> DetectionOutcome {
    let detected: HashSet<usize> = detected.iter().copied().collect();
    let truth: HashSet<usize> = truth.iter().copied().collect();
    let tp = detected.intersection(&truth).count();
    let fp = detected.len() - tp;
    let fn_ = truth.len() - tp;
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f_score = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    DetectionOutcome {
        tp,
        fp,
        fn_,
        precision,
        recall,
        f_score,
    }
}
