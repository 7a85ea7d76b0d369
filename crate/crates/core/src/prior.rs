//! Betweenness-scaled delay prior.

use crate::error::{Error, Result};
use crate::graph::EdgeBetweenness;

/// Prior belief about link delays, linear in betweenness: the link with the
/// largest betweenness `B` maps to `D`, zero betweenness maps to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorVector {
    pub s: Vec<f64>,
    pub max_delay: f64,
    pub max_betweenness: f64,
}

impl PriorVector {
    /// All-zero prior, which turns the centred objective into plain LASSO.
    pub fn zeros(n: usize, max_delay: f64) -> Self {
        PriorVector {
            s: vec![0.0; n],
            max_delay,
            max_betweenness: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// `s_i = D · b_i / B`.
pub fn scale_prior(bc: &EdgeBetweenness, max_delay: f64) -> Result<PriorVector> {
    if !(max_delay > 0.0 && max_delay.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "max delay must be positive, got {max_delay}"
        )));
    }
    let b_max = bc.max_value;
    if !(b_max > 0.0) {
        return Err(Error::ZeroMaxBetweenness);
    }
    Ok(PriorVector {
        s: bc.values.iter().map(|&b| max_delay * (b / b_max)).collect(),
        max_delay,
        max_betweenness: b_max,
    })
}
