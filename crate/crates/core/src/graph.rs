//! Simple undirected graphs with contiguous integer vertex ids, plus the
//! cut/cocircuit machinery built on them.
//!
//! A cut is an unordered bipartition of the vertices into two non-empty
//! shores; it is stored canonically with vertex 0 in [`Cut::shore0`] so each
//! bipartition is represented exactly once.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

/// Vertex subset of a graph, ordered for deterministic iteration.
pub type VertexSet = BTreeSet<Vertex>;

/// Edge subset of a graph, ordered lexicographically.
pub type EdgeSet = BTreeSet<Edge>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cut shore may not be empty")]
    EmptyShore,
    #[error("cut is over {cut_n} vertices but the graph has {graph_n}")]
    CutSizeMismatch { cut_n: usize, graph_n: usize },
    #[error("stretch factor must be at least 1")]
    ZeroStretch,
}

/// Undirected edge, stored with the smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        Ok(Edge(a.min(b), a.max(b)))
    }

    pub fn u(&self) -> Vertex {
        self.0
    }

    pub fn v(&self) -> Vertex {
        self.1
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    /// True when exactly one endpoint lies in `shore`.
    pub fn crosses(&self, shore: &VertexSet) -> bool {
        shore.contains(&self.0) != shore.contains(&self.1)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are kept sorted lexicographically; construction rejects loops,
/// duplicates, and out-of-range endpoints, so every `Graph` is simple.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Graph, GraphError> {
        let mut es = Vec::new();
        for (a, b) in edges {
            for &x in &[a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            es.push(Edge::new(a, b)?);
        }
        es.sort_unstable();
        if let Some(w) = es.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        let mut adj = vec![Vec::new(); n];
        for e in &es {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: es, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).expect("edgeless graph is always valid")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph is always valid")
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path graph is always valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle graph is always valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        match Edge::new(a, b) {
            Ok(e) => self.edges.binary_search(&e).is_ok(),
            Err(_) => false,
        }
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True when the graph has at most one component (so also for `n <= 1`).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether the subgraph induced on `s` is connected.
    ///
    /// The empty set induces the graph with no vertices, which counts as
    /// connected. Panics if `s` contains a vertex outside the graph.
    pub fn induces_connected(&self, s: &VertexSet) -> bool {
        if let Some(&v) = s.iter().next_back() {
            assert!(v < self.n, "vertex {v} out of range for induces_connected");
        }
        let Some(&start) = s.iter().next() else {
            return true;
        };
        if s.len() == 1 {
            return true;
        }
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if s.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == s.len()
    }

    /// The edges with one endpoint in each shore of `cut`.
    pub fn crossing_set(&self, cut: &Cut) -> EdgeSet {
        assert_eq!(
            cut.vertex_count(),
            self.n,
            "cut does not belong to this graph"
        );
        self.edges
            .iter()
            .filter(|e| e.crosses(cut.shore0()))
            .copied()
            .collect()
    }

    /// Whether `cut` is a cocircuit: deleting its crossing set must leave
    /// exactly two connected components. Defined for connected graphs only.
    pub fn is_cocircuit(&self, cut: &Cut) -> Result<bool, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if cut.vertex_count() != self.n {
            return Err(GraphError::CutSizeMismatch {
                cut_n: cut.vertex_count(),
                graph_n: self.n,
            });
        }
        let crossing = self.crossing_set(cut);
        Ok(self.components_without(&crossing) == 2)
    }

    /// Component count after deleting the given edges.
    fn components_without(&self, removed: &EdgeSet) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] && !removed.contains(&Edge(v.min(w), v.max(w))) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Edges whose deletion increases the component count, found with a
    /// lowpoint depth-first search.
    pub fn bridges(&self) -> EdgeSet {
        const UNVISITED: usize = usize::MAX;
        let mut disc = vec![UNVISITED; self.n];
        let mut low = vec![0usize; self.n];
        let mut timer = 0;
        let mut out = EdgeSet::new();
        // frames: (vertex, parent, next adjacency index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
        for root in 0..self.n {
            if disc[root] != UNVISITED {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, UNVISITED, 0));
            while let Some(&(v, parent, idx)) = stack.last() {
                if idx < self.adj[v].len() {
                    stack.last_mut().expect("frame exists").2 += 1;
                    let w = self.adj[v][idx];
                    if disc[w] == UNVISITED {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.insert(Edge(p.min(v), p.max(v)));
                        }
                    }
                }
            }
        }
        out
    }

    /// Replace every edge by a path with `l` edges.
    ///
    /// Original vertices keep their ids; the interior vertices of the path
    /// replacing the `i`-th edge (edges in lexicographic order) are
    /// `n + (l-1)*i + t` for `t = 0..l-1`, walking from the smaller original
    /// endpoint. `stretch(1)` returns the graph unchanged.
    pub fn stretch(&self, l: usize) -> Result<Stretched, GraphError> {
        if l == 0 {
            return Err(GraphError::ZeroStretch);
        }
        let m = self.edges.len();
        let mut new_edges = Vec::with_capacity(m * l);
        let mut paths = Vec::with_capacity(m);
        for (i, e) in self.edges.iter().enumerate() {
            let base = self.n + (l - 1) * i;
            let mut chain = Vec::with_capacity(l);
            let mut prev = e.0;
            for t in 0..l - 1 {
                chain.push(Edge(prev.min(base + t), prev.max(base + t)));
                prev = base + t;
            }
            chain.push(Edge(prev.min(e.1), prev.max(e.1)));
            new_edges.extend(chain.iter().map(|c| (c.0, c.1)));
            paths.push((*e, chain));
        }
        let graph = Graph::new(self.n + m * (l - 1), new_edges)?;
        Ok(Stretched { graph, paths })
    }
}

/// Result of [`Graph::stretch`]: the subdivided graph together with the map
/// from each original edge to its replacement path.
#[derive(Clone, Debug)]
pub struct Stretched {
    pub graph: Graph,
    /// One entry per original edge, in lexicographic order: the edge and the
    /// `l` edges of its path, listed from the smaller original endpoint.
    pub paths: Vec<(Edge, Vec<Edge>)>,
}

/// Unordered bipartition of `0..n` into two non-empty shores, canonicalized
/// so that vertex 0 lies in shore 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cut {
    n: usize,
    shore0: VertexSet,
    shore1: VertexSet,
}

impl Cut {
    /// Build the cut separating `shore` from its complement in `0..n`.
    /// Either side may be passed; the one containing vertex 0 becomes
    /// [`Cut::shore0`].
    pub fn new(n: usize, shore: &VertexSet) -> Result<Cut, GraphError> {
        if let Some(&v) = shore.iter().next_back() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        let complement: VertexSet = (0..n).filter(|v| !shore.contains(v)).collect();
        if shore.is_empty() || complement.is_empty() {
            return Err(GraphError::EmptyShore);
        }
        let (shore0, shore1) = if shore.contains(&0) {
            (shore.clone(), complement)
        } else {
            (complement, shore.clone())
        };
        Ok(Cut { n, shore0, shore1 })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The shore containing vertex 0.
    pub fn shore0(&self) -> &VertexSet {
        &self.shore0
    }

    pub fn shore1(&self) -> &VertexSet {
        &self.shore1
    }
}
