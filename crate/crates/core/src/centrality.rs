//! Exact betweenness centrality on small unweighted undirected graphs.
//!
//! Scores are normalized by the number of unordered endpoint pairs that
//! exclude the node, `(n-1)(n-2)/2`, so every score lies in `[0, 1]` and
//! components of different sizes are comparable. Graphs with fewer than three
//! nodes score 0 everywhere.

use std::collections::VecDeque;
use std::ops::Index;

use crate::error::{Error, Result};

/// Compact adjacency-list graph over nodes `0..n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn with_nodes(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from undirected edges; duplicates and self-loops are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::with_nodes(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_node(&mut self) -> usize {
        self.adjacency.push(Vec::new());
        self.adjacency.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a == b || self.adjacency[a].contains(&b) {
            return;
        }
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }
}

/// Normalized betweenness scores indexed by node.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CentralityScores(Vec<f64>);

impl CentralityScores {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Index<usize> for CentralityScores {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

fn pair_normalizer(n: usize) -> Option<f64> {
    (n >= 3).then(|| ((n - 1) * (n - 2)) as f64 / 2.0)
}

/// Exact normalized betweenness via Brandes' accumulation.
pub fn betweenness(graph: &Graph) -> CentralityScores {
    let n = graph.node_count();
    let Some(norm) = pair_normalizer(n) else {
        return CentralityScores(vec![0.0; n]);
    };
    let raw = raw_betweenness(graph);
    // Brandes visits every unordered pair from both endpoints.
    CentralityScores(raw.into_iter().map(|b| b / 2.0 / norm).collect())
}

/// Normalized scores of a graph of `n` nodes whose first `raw.len()` nodes
/// have the given raw sums and whose remaining nodes are isolated. Isolated
/// nodes leave every raw sum untouched, so this equals [`betweenness`] on the
/// padded graph bit for bit.
pub fn normalize_padded(raw: &[f64], n: usize) -> CentralityScores {
    assert!(raw.len() <= n);
    let Some(norm) = pair_normalizer(n) else {
        return CentralityScores(vec![0.0; n]);
    };
    let mut scores: Vec<f64> = raw.iter().map(|b| b / 2.0 / norm).collect();
    scores.resize(n, 0.0);
    CentralityScores(scores)
}

/// Unnormalized Brandes sums over ordered source/target pairs.
pub fn raw_betweenness(graph: &Graph) -> Vec<f64> {
    let n = graph.node_count();
    let mut cb = vec![0.0; n];
    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        dist.fill(usize::MAX);
        sigma.fill(0.0);
        delta.fill(0.0);
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let next = dist[v] + 1;
            for &w in graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = next;
                    queue.push_back(w);
                }
                if dist[w] == next {
                    sigma[w] += sigma[v];
                }
            }
        }

        for &w in order.iter().rev() {
            let coeff = (1.0 + delta[w]) / sigma[w];
            for &v in graph.neighbors(w) {
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    delta[v] += sigma[v] * coeff;
                }
            }
            if w != s {
                cb[w] += delta[w];
            }
        }
    }
    cb
}

/// Largest graph accepted by [`betweenness_oracle`].
pub const ORACLE_MAX_NODES: usize = 12;

/// Reference betweenness by explicit enumeration of every geodesic.
///
/// For each unordered pair the shortest paths are listed one by one by
/// walking the breadth-first layers backwards from the target, and each
/// interior node is credited `paths through it / total paths`. Exponential in
/// the worst case; intended only for verification.
pub fn betweenness_oracle(graph: &Graph) -> Result<CentralityScores> {
    let n = graph.node_count();
    if n > ORACLE_MAX_NODES {
        return Err(Error::InvalidParameter(format!(
            "oracle accepts at most {ORACLE_MAX_NODES} nodes, got {n}"
        )));
    }
    let Some(norm) = pair_normalizer(n) else {
        return Ok(CentralityScores(vec![0.0; n]));
    };
    let mut scores = vec![0.0; n];
    for s in 0..n {
        let dist = bfs_layers(graph, s);
        for t in (s + 1)..n {
            if dist[t].is_none() {
                continue;
            }
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![t];
            collect_geodesics(graph, &dist, s, &mut stack, &mut paths);
            let total = paths.len() as f64;
            let mut through = vec![0u64; n];
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    through[v] += 1;
                }
            }
            for (v, &c) in through.iter().enumerate() {
                if c > 0 {
                    scores[v] += c as f64 / total;
                }
            }
        }
    }
    Ok(CentralityScores(
        scores.into_iter().map(|b| b / norm).collect(),
    ))
}

fn bfs_layers(graph: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; graph.node_count()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in graph.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn collect_geodesics(
    graph: &Graph,
    dist: &[Option<usize>],
    source: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *stack.last().unwrap();
    if v == source {
        out.push(stack.iter().rev().copied().collect());
        return;
    }
    let d = dist[v].unwrap();
    for &u in graph.neighbors(v) {
        if dist[u] == Some(d - 1) {
            stack.push(u);
            collect_geodesics(graph, dist, source, stack, out);
            stack.pop();
        }
    }
}
