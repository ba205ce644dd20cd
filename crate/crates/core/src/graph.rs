//! Simple undirected graphs with canonical edge numbering.
//!
//! Vertices are `0..n`. Edges are stored with the smaller endpoint first and
//! sorted lexicographically; an edge's id is its index in that order. Every
//! other module (rotation systems, embeddings, the SAT encoding) refers to
//! edges by this id.

use std::collections::VecDeque;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    LoopEdge(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: VertexId, v: VertexId, n: usize },
    #[error("{0} labels given for {1} vertices")]
    LabelCount(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    labels: Option<Vec<String>>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    /// Builds a graph, canonicalizing the edge list.
    pub fn new(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::EndpointOutOfRange { u, v, n: vertex_count });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (id, &(u, v)) in canon.iter().enumerate() {
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        Ok(Graph { n: vertex_count, edges: canon, labels: None, adjacency })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount(labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Neighbors of `v` with the connecting edge id, in increasing edge-id order.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a vertex: its label if present, else the index.
    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adjacency.iter().all(|a| a.len() == k)
    }

    /// Two edges are adjacent when they share an endpoint.
    pub fn edges_adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_without(&[])
    }

    /// Connectivity of the graph after deleting `removed`. Graphs with at
    /// most one remaining vertex count as connected.
    pub fn is_connected_without(&self, removed: &[VertexId]) -> bool {
        let alive = |v: VertexId| !removed.contains(&v);
        let Some(start) = (0..self.n).find(|&v| alive(v)) else {
            return true;
        };
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if alive(w) && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n - removed.iter().filter(|&&v| v < self.n).count()
    }

    /// Exhaustive check: more than three vertices, and no set of at most
    /// two vertices disconnects the graph. Quadratic number of BFS runs.
    pub fn is_three_connected(&self) -> bool {
        if self.n <= 3 || !self.is_connected() {
            return false;
        }
        for a in 0..self.n {
            if !self.is_connected_without(&[a]) {
                return false;
            }
            for b in a + 1..self.n {
                if !self.is_connected_without(&[a, b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Two-coloring of the vertices with every edge joining side 0 to side 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side_of: Vec<u8>,
}

impl Bipartition {
    pub fn side(&self, v: VertexId) -> u8 {
        self.side_of[v]
    }

    pub fn sides(&self) -> &[u8] {
        &self.side_of
    }

    pub fn class(&self, side: u8) -> Vec<VertexId> {
        (0..self.side_of.len()).filter(|&v| self.side_of[v] == side).collect()
    }
}

/// Returned when no bipartition exists; `odd_cycle` lists the vertices of an
/// odd cycle in order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not bipartite (odd cycle of length {})", odd_cycle.len())]
pub struct NotBipartite {
    pub odd_cycle: Vec<VertexId>,
}

/// BFS 2-coloring, component by component; the least vertex of each
/// component goes to side 0.
pub fn bipartition(g: &Graph) -> Result<Bipartition, NotBipartite> {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return Err(NotBipartite { odd_cycle: close_cycle(v, w, &parent, &depth) });
                }
            }
        }
    }
    Ok(Bipartition { side_of: side })
}

/// Tree paths from `a` and `b` up to their common ancestor, joined by the
/// non-tree edge (a, b).
fn close_cycle(a: VertexId, b: VertexId, parent: &[usize], depth: &[usize]) -> Vec<VertexId> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}
