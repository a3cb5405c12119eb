//! Simple undirected graphs, loop-free digraphs, and line-graph construction.
//!
//! Vertices are `0..n`. [`Graph`] stores sorted adjacency lists and rejects
//! loops and parallel edges at construction, so every value of the type
//! satisfies the simple-graph invariants. [`Digraph`] allows parallel arcs
//! but no loops.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("adjacency lists not symmetric at {0}-{1}")]
    Asymmetric(usize, usize),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("digraph has a loop at vertex {0}")]
    LoopPresent(usize),
}

/// Unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge(usize, usize);

impl Edge {
    /// Panics if `a == b`; loops are never valid edges here.
    pub fn new(a: usize, b: usize) -> Edge {
        assert!(a != b, "edge endpoints must be distinct");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> usize {
        self.0
    }

    pub fn v(&self) -> usize {
        self.1
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint other than `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.0 {
            self.1
        } else {
            assert_eq!(x, self.1, "vertex {x} is not an endpoint of {self}");
            self.0
        }
    }

    /// Shared endpoint of two distinct edges, if any. Distinct simple edges
    /// share at most one vertex.
    pub fn shared_vertex(&self, other: &Edge) -> Option<usize> {
        if other.contains(self.0) {
            Some(self.0)
        } else if other.contains(self.1) {
            Some(self.1)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

/// Relabeling produced by vertex deletion: old index -> new index and back.
#[derive(Clone, Debug)]
pub struct VertexMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge_checked(a, b)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Builds a graph from full adjacency lists (each edge listed at both
    /// endpoints, in any order). Rejects loops, duplicates, and asymmetry.
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Result<Graph, GraphError> {
        let n = adj.len();
        for (v, list) in adj.iter().enumerate() {
            for &w in list {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
                if w == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if list.iter().filter(|&&x| x == w).count() > 1 {
                    return Err(GraphError::DuplicateEdge(v.min(w), v.max(w)));
                }
                if !adj[w].contains(&v) {
                    return Err(GraphError::Asymmetric(v, w));
                }
            }
        }
        let mut sorted = adj;
        for list in &mut sorted {
            list.sort_unstable();
        }
        Ok(Graph { n, adj: sorted })
    }

    fn add_edge_checked(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        let n = self.n;
        for v in [a, b] {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.adj[a].contains(&b) {
            return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
        }
        self.adj[a].push(b);
        self.adj[b].push(a);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m());
        for v in 0..self.n {
            for &w in &self.adj[v] {
                if v < w {
                    out.push(Edge(v, w));
                }
            }
        }
        out
    }

    pub fn is_cubic(&self) -> bool {
        self.n > 0 && self.adj.iter().all(|l| l.len() == 3)
    }

    /// Length of a shortest cycle, or `None` for forests.
    ///
    /// One BFS per root; every non-tree edge (x, w) seen from root r yields a
    /// closed walk of length dist(x) + dist(w) + 1 that contains a cycle, and
    /// for a root on a shortest cycle the walk achieves the girth.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = Vec::with_capacity(self.n);
        for r in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            dist[r] = 0;
            queue.push(r);
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for &w in &self.adj[x] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[x] + 1;
                        parent[w] = x;
                        queue.push(w);
                    } else if parent[x] != w && parent[w] != x {
                        let cand = dist[x] + dist[w] + 1;
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        best
    }

    /// Deletes the vertices in `s` (duplicates tolerated) and compacts the
    /// remaining indices in ascending order.
    pub fn delete_vertices(&self, s: &[usize]) -> (Graph, VertexMap) {
        let mut gone = vec![false; self.n];
        for &v in s {
            assert!(v < self.n, "vertex {v} out of range");
            gone[v] = true;
        }
        let mut old_to_new = vec![None; self.n];
        let mut new_to_old = Vec::new();
        for v in 0..self.n {
            if !gone[v] {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let adj = new_to_old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| old_to_new[w])
                    .collect::<Vec<_>>()
            })
            .collect();
        (
            Graph {
                n: new_to_old.len(),
                adj,
            },
            VertexMap {
                old_to_new,
                new_to_old,
            },
        )
    }

    /// Line graph: one vertex per edge of `self`, adjacent when the edges
    /// share an endpoint. Edge-to-vertex indexing follows the lexicographic
    /// order of [`Graph::edges`]. When `self` is cubic the returned map also
    /// carries the facial-triangle partition (one triangle per vertex of
    /// `self`, covering every line-graph edge exactly once).
    pub fn line_graph(&self) -> (Graph, LineGraphMap) {
        let vertex_to_edge = self.edges();
        let mut edge_to_vertex = BTreeMap::new();
        for (i, e) in vertex_to_edge.iter().enumerate() {
            edge_to_vertex.insert(*e, i);
        }
        // Edges at a common endpoint form a clique.
        let mut incident = vec![Vec::new(); self.n];
        for (i, e) in vertex_to_edge.iter().enumerate() {
            incident[e.u()].push(i);
            incident[e.v()].push(i);
        }
        let mut lg_edges = Vec::new();
        for at in &incident {
            for i in 0..at.len() {
                for j in i + 1..at.len() {
                    lg_edges.push((at[i], at[j]));
                }
            }
        }
        let lg = Graph::from_edges(vertex_to_edge.len(), &lg_edges)
            .expect("distinct simple edges share at most one endpoint");
        let triangles = if self.is_cubic() {
            Some(
                incident
                    .iter()
                    .map(|at| {
                        let mut t = [at[0], at[1], at[2]];
                        t.sort_unstable();
                        t
                    })
                    .collect(),
            )
        } else {
            None
        };
        (
            lg,
            LineGraphMap {
                vertex_to_edge,
                edge_to_vertex,
                triangles,
            },
        )
    }
}

/// Bijection between the edges of a base graph Y and the vertices of its
/// line graph L(Y), plus, for cubic Y, the triangle partition of E(L(Y)).
#[derive(Clone, Debug)]
pub struct LineGraphMap {
    vertex_to_edge: Vec<Edge>,
    edge_to_vertex: BTreeMap<Edge, usize>,
    triangles: Option<Vec<[usize; 3]>>,
}

impl LineGraphMap {
    /// The Y-edge represented by line-graph vertex `x`.
    pub fn edge_of(&self, x: usize) -> Edge {
        self.vertex_to_edge[x]
    }

    /// The line-graph vertex representing `e`, if `e` is an edge of Y.
    pub fn vertex_of(&self, e: Edge) -> Option<usize> {
        self.edge_to_vertex.get(&e).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_to_edge.len()
    }

    /// Triangle partition of E(L(Y)): `partition()[y]` holds the three
    /// line-graph vertices whose Y-edges meet at vertex y. Only cubic base
    /// graphs admit the partition.
    pub fn triangle_partition(&self) -> Result<&[[usize; 3]], GraphError> {
        self.triangles.as_deref().ok_or(GraphError::NotCubic)
    }
}

/// Loop-free digraph; parallel arcs allowed and counted with multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Digraph, GraphError> {
        for &(a, b) in &arcs {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::LoopPresent(a));
            }
        }
        Ok(Digraph { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(a, _)| a == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(_, b)| b == v).count()
    }
}
