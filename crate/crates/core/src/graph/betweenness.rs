use std::collections::VecDeque;

use log::warn;

use super::Graph;

/// Shortest-path edge betweenness over unordered node pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBetweenness {
    pub values: Vec<f64>,
    pub max_value: f64,
}

impl EdgeBetweenness {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Edge betweenness by Brandes' dependency accumulation.
///
/// Each unordered pair `(s, t)` spreads one unit of credit evenly over its
/// shortest paths. Pairs in different components contribute nothing; a
/// disconnected graph is reported through `log::warn!`.
pub fn edge_betweenness(g: &Graph) -> EdgeBetweenness {
    let n = g.node_count();
    if !g.is_connected() {
        warn!("graph is disconnected; betweenness is computed per component");
    }
    let mut values = vec![0.0; g.edge_count()];

    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];

    for source in 0..n {
        order.clear();
        dist.fill(usize::MAX);
        sigma.fill(0.0);
        delta.fill(0.0);
        preds.iter_mut().for_each(Vec::clear);

        dist[source] = 0;
        sigma[source] = 1.0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, e) in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push((v, e));
                }
            }
        }

        for &w in order.iter().rev() {
            for &(v, e) in &preds[w] {
                let credit = sigma[v] / sigma[w] * (1.0 + delta[w]);
                values[e] += credit;
                delta[v] += credit;
            }
        }
    }

    // every unordered pair was visited from both endpoints
    for v in &mut values {
        *v /= 2.0;
    }
    let max_value = values.iter().copied().fold(0.0, f64::max);
    EdgeBetweenness { values, max_value }
}
