//! Synthetic topology generators.
//!
//! All generators are deterministic given the random source and return a
//! connected [`Graph`].

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Preferential-attachment (Barabási–Albert) graph.
///
/// Starts from a clique on `attach + 1` nodes; each later node links to
/// `attach` distinct existing nodes chosen with probability proportional to
/// their degree. Edge count is `attach * (attach + 1) / 2 + (nodes - attach - 1) * attach`.
pub fn scale_free<R: Rng + ?Sized>(nodes: usize, attach: usize, rng: &mut R) -> Result<Graph> {
    if attach == 0 || nodes <= attach {
        return Err(Error::InvalidConfig(format!(
            "scale-free needs attach >= 1 and nodes > attach (got nodes={nodes}, attach={attach})"
        )));
    }
    let mut edges = Vec::new();
    // each node appears once per incident edge end
    let mut ends = Vec::new();
    for u in 0..=attach {
        for v in (u + 1)..=attach {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(attach);
    for new in (attach + 1)..nodes {
        targets.clear();
        while targets.len() < attach {
            let t = ends[rng.random_range(0..ends.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, new));
            ends.extend([t, new]);
        }
    }
    Graph::from_edges(nodes, &edges)
}

/// Uniform-ish random `degree`-regular graph by the pairing model, retried
/// until the result is simple and connected.
pub fn random_regular<R: Rng + ?Sized>(nodes: usize, degree: usize, rng: &mut R) -> Result<Graph> {
    if degree == 0 || degree >= nodes || !(nodes * degree).is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "no {degree}-regular graph on {nodes} nodes"
        )));
    }
    const MAX_TRIES: usize = 10_000;
    let mut stubs: Vec<usize> = (0..nodes)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    for _ in 0..MAX_TRIES {
        stubs.shuffle(rng);
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(stubs.len() / 2);
        let ok = stubs.chunks_exact(2).all(|pair| {
            let (u, v) = (pair[0], pair[1]);
            u != v && seen.insert((u.min(v), u.max(v))) && {
                edges.push((u, v));
                true
            }
        });
        if !ok {
            continue;
        }
        let g = Graph::from_edges(nodes, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::InvalidConfig(format!(
        "failed to draw a simple connected {degree}-regular graph on {nodes} nodes"
    )))
}

/// `rows × cols` 2-D lattice with 4-neighborhood.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 || rows * cols < 2 {
        return Err(Error::InvalidConfig(format!(
            "grid {rows}x{cols} has no edges"
        )));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges)
}
