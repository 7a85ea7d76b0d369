use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Node sequence of one random walk and the distinct edges it crossed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkPath {
    pub nodes: Vec<usize>,
    /// Sorted, distinct edge indices.
    pub edges: Vec<usize>,
}

/// How a walk picks its first node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartPolicy {
    #[default]
    Uniform,
    Fixed(usize),
}

/// Simple random walk of `steps` moves, each to a uniform neighbor.
pub fn random_walk<R: Rng + ?Sized>(
    g: &Graph,
    start: usize,
    steps: usize,
    rng: &mut R,
) -> Result<WalkPath> {
    if steps == 0 {
        return Err(Error::InvalidCount("walk steps must be at least 1".into()));
    }
    if start >= g.node_count() {
        return Err(Error::NodeOutOfRange {
            node: start,
            node_count: g.node_count(),
        });
    }
    if g.degree(start) == 0 {
        return Err(Error::IsolatedNode(start));
    }
    let mut nodes = Vec::with_capacity(steps + 1);
    let mut edges = Vec::with_capacity(steps);
    let mut current = start;
    nodes.push(current);
    for _ in 0..steps {
        let adj = g.neighbors(current);
        let (next, e) = adj[rng.random_range(0..adj.len())];
        edges.push(e);
        nodes.push(next);
        current = next;
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(WalkPath { nodes, edges })
}

/// `m` independent walks, drawn one after another from `rng`.
pub fn sample_walks<R: Rng + ?Sized>(
    g: &Graph,
    m: usize,
    steps: usize,
    start_policy: StartPolicy,
    rng: &mut R,
) -> Result<Vec<WalkPath>> {
    if m == 0 {
        return Err(Error::InvalidCount(
            "number of walks must be at least 1".into(),
        ));
    }
    (0..m)
        .map(|_| {
            let start = match start_policy {
                StartPolicy::Uniform => rng.random_range(0..g.node_count()),
                StartPolicy::Fixed(node) => node,
            };
            random_walk(g, start, steps, rng)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn forced_first_move() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = random_walk(&p3(), 0, 1, &mut rng).unwrap();
        assert_eq!(w.nodes, vec![0, 1]);
        assert_eq!(w.edges, vec![0]);
    }

    #[test]
    fn two_steps_stay_in_reach() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = random_walk(&p3(), 0, 2, &mut rng).unwrap();
            assert_eq!(&w.nodes[..2], &[0, 1]);
            assert!(w.nodes[2] == 0 || w.nodes[2] == 2);
            assert!(w.edges.iter().all(|&e| e < 2));
        }
    }

    #[test]
    fn same_seed_same_walk() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let a = random_walk(&g, 0, 15, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = random_walk(&g, 0, 15, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn isolated_start_rejected() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            random_walk(&g, 2, 3, &mut rng),
            Err(Error::IsolatedNode(2))
        ));
        assert!(matches!(
            random_walk(&g, 0, 0, &mut rng),
            Err(Error::InvalidCount(_))
        ));
    }

    #[test]
    fn sample_walks_counts_and_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(
            sample_walks(&p3(), 0, 3, StartPolicy::Uniform, &mut rng),
            Err(Error::InvalidCount(_))
        ));
        let walks = sample_walks(&p3(), 5, 3, StartPolicy::Uniform, &mut rng).unwrap();
        assert_eq!(walks.len(), 5);
        assert!(walks.iter().all(|w| w.edges.iter().all(|&e| e < 2)));
        let again = sample_walks(
            &p3(),
            5,
            3,
            StartPolicy::Uniform,
            &mut ChaCha8Rng::seed_from_u64(3),
        )
        .unwrap();
        assert_eq!(walks, again);
    }

    #[test]
    fn walk_stays_in_start_component() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let comp = g.components();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for start in 0..5 {
            let w = random_walk(&g, start, 10, &mut rng).unwrap();
            assert!(w.nodes.iter().all(|&v| comp[v] == comp[start]));
        }
    }
}
