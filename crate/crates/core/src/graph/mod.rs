//! Network topology, edge betweenness and random-walk paths.

mod betweenness;
pub mod topology;
mod walk;

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};

pub use betweenness::{edge_betweenness, EdgeBetweenness};
pub use walk::{random_walk, sample_walks, StartPolicy, WalkPath};

/// Undirected simple graph whose edges carry a dense index in `[0, N)`.
///
/// Edge `e` is `edges()[e]`; adjacency lists hold `(neighbor, edge index)`
/// pairs and are symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph over nodes `0..node_count` from dense-index pairs.
    ///
    /// Errors carry the 1-based position of the offending pair as the line.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (0..node_count).map(|i| i.to_string()).collect();
        Self::build(
            labels,
            edges.iter().copied().enumerate().map(|(i, e)| (i + 1, e)),
        )
    }

    fn build(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, (usize, usize))>,
    ) -> Result<Self> {
        let node_count = labels.len();
        let mut adjacency = vec![Vec::new(); node_count];
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (line, (u, v)) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line,
                    node: labels[u].clone(),
                });
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key, line).is_some() {
                return Err(Error::DuplicateEdge {
                    line,
                    u: labels[u].clone(),
                    v: labels[v].clone(),
                });
            }
            let e = out.len();
            out.push((u, v));
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
        }
        if out.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Graph {
            edges: out,
            adjacency,
            labels,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    /// External identifier of a node (the id from the edge list).
    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    /// Dense index of an edge between `u` and `v`, in either orientation.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adjacency
            .get(u)?
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    /// Connected component id for every node; ids are dense and ordered by
    /// the smallest node in each component.
    pub fn components(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = next;
            stack.push(root);
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }
}

/// Builds a graph from pairs of external node ids.
///
/// Ids are mapped to dense indices in order of first appearance.
pub fn load_graph<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Graph> {
    load_numbered(
        pairs
            .iter()
            .enumerate()
            .map(|(i, (u, v))| (i + 1, u.as_ref(), v.as_ref())),
    )
}

fn load_numbered<'a>(items: impl IntoIterator<Item = (usize, &'a str, &'a str)>) -> Result<Graph> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |id: &'a str, labels: &mut Vec<String>| {
        *index.entry(id).or_insert_with(|| {
            labels.push(id.to_string());
            labels.len() - 1
        })
    };
    for (line, u, v) in items {
        let a = intern(u, &mut labels);
        let b = intern(v, &mut labels);
        edges.push((line, (a, b)));
    }
    Graph::build(labels, edges)
}

/// Parses the edge-list text format: two whitespace-separated node ids per
/// line, blank lines and lines starting with `#` ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut items = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match (fields.next(), fields.next(), fields.next()) {
            (Some(u), Some(v), None) => items.push((i + 1, u, v)),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected two node ids, got {line:?}"),
                })
            }
        }
    }
    load_numbered(items)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text)
}

/// Renders the graph in the edge-list text format using node labels.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for &(u, v) in g.edges() {
        out.push_str(g.label(u));
        out.push(' ');
        out.push_str(g.label(v));
        out.push('\n');
    }
    out
}
