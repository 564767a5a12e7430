//! Finite simple graphs with exact adjacency data.
//!
//! Graphs are irreflexive and undirected, vertices are `0..n`. Equality is
//! labeled: two graphs compare equal only when their adjacency matrices do.

mod charpoly;
mod io;
mod iso;

use std::collections::BTreeSet;

use thiserror::Error;

pub use charpoly::{char_poly, is_isospectral, spectrum_is_simple, CharPoly};
pub use io::{parse_edge_list, parse_graph, parse_graph_json, GraphJson};
pub use iso::{automorphism_order, is_isomorphic, MAX_SEARCH_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph must have at least one vertex")]
    Empty,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("adjacency matrix is not symmetric 0/1 with zero diagonal at ({0}, {1})")]
    BadAdjacency(usize, usize),

    #[error("graph has {n} vertices, search is limited to {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),

    #[error("base graph is not regular")]
    NotRegular,

    #[error("base graph must have an even number of vertices, got {0}")]
    OddOrder(usize),

    #[error("switching subset must have {expected} distinct vertices, got {got}")]
    BadSubset { expected: usize, got: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type GraphResult<T> = Result<T, GraphError>;

/// A finite simple graph stored as a dense symmetric 0/1 matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> GraphResult<Self> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Self {
            n,
            adj: vec![false; n * n],
        })
    }

    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> GraphResult<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from a square 0/1 matrix.
    pub fn from_adjacency(rows: &[Vec<u8>]) -> GraphResult<Self> {
        let n = rows.len();
        let mut g = Self::empty(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::BadAdjacency(i, row.len()));
            }
            for (j, &x) in row.iter().enumerate() {
                let ok = x <= 1 && (i != j || x == 0) && rows[j].get(i) == Some(&x);
                if !ok {
                    return Err(GraphError::BadAdjacency(i, j));
                }
                if x == 1 {
                    g.adj[i * n + j] = true;
                }
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> GraphResult<Self> {
        Self::empty(n).map(|g| g.complement())
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> GraphResult<Self> {
        if n < 3 {
            return Err(GraphError::CycleTooShort(n));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> GraphResult<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, v: usize) -> GraphResult<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        self.adj[u * self.n + v] = on;
        self.adj[v * self.n + u] = on;
    }

    /// Panics if `u` or `v` is out of range.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter().enumerate().filter(|(_, &e)| e).map(|(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u * self.n + v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&e| e).count() / 2
    }

    /// The adjacency matrix as 0/1 integers.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| i64::from(self.adj[u * self.n + v])).collect())
            .collect()
    }

    /// Neighbourhood bitsets; only meaningful for `n <= 64`.
    pub(crate) fn bitsets(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        (0..self.n)
            .map(|v| self.neighbors(v).fold(0u64, |acc, w| acc | (1u64 << w)))
            .collect()
    }

    /// Seidel relation: `0` on the diagonal, `-1` on edges, `+1` otherwise.
    pub fn rel(&self, v: usize, w: usize) -> GraphResult<i8> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        Ok(self.rel_unchecked(v, w))
    }

    pub(crate) fn rel_unchecked(&self, v: usize, w: usize) -> i8 {
        if v == w {
            0
        } else if self.adj[v * self.n + w] {
            -1
        } else {
            1
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                adj[u * n + v] = u != v && !self.adj[u * n + v];
            }
        }
        Self { n, adj }
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> GraphResult<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(GraphError::BadSubset {
                expected: n,
                got: perm.len(),
            });
        }
        for &p in perm {
            self.check_vertex(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::BadSubset {
                    expected: n,
                    got: perm.len(),
                });
            }
        }
        let mut out = Self::empty(n)?;
        for (u, v) in self.edges() {
            out.set_edge(perm[u], perm[v], true);
        }
        Ok(out)
    }

    /// The subgraph induced on `vertices`, relabeled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> GraphResult<Self> {
        let mut out = Self::empty(vertices.len())?;
        for &v in vertices {
            self.check_vertex(v)?;
        }
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if u != v && self.has_edge(u, v) {
                    out.set_edge(i, j, true);
                }
            }
        }
        Ok(out)
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        let first = d[0];
        d.iter().all(|&x| x == first).then_some(first)
    }

    /// Adds one vertex (index `n`) joined to every vertex in `joined`.
    pub fn add_vertex_joined(&self, joined: &BTreeSet<usize>) -> GraphResult<Self> {
        let n = self.n + 1;
        let mut out = Self::empty(n)?;
        for (u, v) in self.edges() {
            out.set_edge(u, v, true);
        }
        for &v in joined {
            self.check_vertex(v)?;
            out.set_edge(self.n, v, true);
        }
        Ok(out)
    }
}

/// The Frucht graph: 3-regular on 12 vertices with trivial automorphism group.
///
/// Built from the LCF code `[-5,-2,-4,2,5,-2,2,5,-2,-5,4,2]`: a Hamiltonian
/// 12-cycle plus one chord per vertex.
pub fn frucht() -> Graph {
    const LCF: [i32; 12] = [-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2];
    let n = LCF.len();
    let mut g = Graph::cycle(n).expect("cycle on 12 vertices");
    for (i, &step) in LCF.iter().enumerate() {
        let j = (i as i32 + step).rem_euclid(n as i32) as usize;
        g.set_edge(i, j, true);
    }
    g
}

/// Godsil–McKay style switching of a regular graph on `2m` vertices.
///
/// Returns `(with_subset, with_complement)`: the first graph adds vertex `2m`
/// joined to `subset`, the second adds it joined to the other `m` vertices.
pub fn gm_switch(base: &Graph, subset: &BTreeSet<usize>) -> GraphResult<(Graph, Graph)> {
    let n = base.n();
    if n % 2 != 0 {
        return Err(GraphError::OddOrder(n));
    }
    if base.regular_degree().is_none() {
        return Err(GraphError::NotRegular);
    }
    for &v in subset {
        base.check_vertex(v)?;
    }
    if subset.len() != n / 2 {
        return Err(GraphError::BadSubset {
            expected: n / 2,
            got: subset.len(),
        });
    }
    let rest: BTreeSet<usize> = (0..n).filter(|v| !subset.contains(v)).collect();
    Ok((base.add_vertex_joined(subset)?, base.add_vertex_joined(&rest)?))
}
