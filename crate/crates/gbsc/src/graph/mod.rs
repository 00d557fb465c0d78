//! Simple undirected graphs: construction, queries, complement, induced
//! subgraphs, and the augmented-k-graph reduction used by the coloring
//! pipeline.
//!
//! Graphs are immutable after construction and safe to share across threads.

mod augmented;
mod generate;
mod io;

pub use augmented::{augment, AugmentedGraph};
pub use generate::{
    erdos_renyi, group_interval_graph, random_group_interval_instance, GroupIntervalInstance,
};
pub use io::{read_dimacs, read_intervals, write_dimacs, write_intervals};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::math::SymMatrix;

/// Undirected simple graph with vertices labeled `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Bits>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            m: 0,
            adj: vec![Bits::new(n); n],
        }
    }

    /// Builds a graph from an explicit edge list.
    ///
    /// Rejects out-of-range endpoints, self-loops, and duplicate edges
    /// (regardless of endpoint order).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts the undirected edge (u, v), rejecting out-of-range
    /// endpoints, self loops and duplicates.
    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for &e in &[u, v] {
            if e >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: e,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u].get(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].set(v);
        self.adj[v].set(u);
        self.m += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Adjacency query. Panics if an endpoint is out of range.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].get(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter_ones()
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter_ones()
                .skip_while(move |&v| v < u)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn adj_row(&self, v: usize) -> &Bits {
        &self.adj[v]
    }

    /// Same vertex set; edge present iff absent here.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.adj[u].get(v) {
                    g.adj[u].set(v);
                    g.adj[v].set(u);
                    g.m += 1;
                }
            }
        }
        g
    }

    /// Edge density `2m / (n(n−1))`; undefined for n ≤ 1.
    pub fn density(&self) -> Result<f64> {
        if self.n <= 1 {
            return Err(Error::InvalidConfig(format!(
                "density is undefined for a graph with {} vertices",
                self.n
            )));
        }
        Ok(2.0 * self.m as f64 / (self.n as f64 * (self.n - 1) as f64))
    }

    /// Subgraph induced by `s`, relabeled to `0..s.len()`.
    ///
    /// Returns the subgraph together with the label map: entry `i` is the
    /// original id of new vertex `i`. `s` must not contain duplicates; the
    /// map preserves the order of `s`.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut seen = Bits::new(self.n);
        for &v in s {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            if seen.get(v) {
                return Err(Error::DuplicateVertex(v));
            }
            seen.set(v);
        }
        let mut g = Graph::empty(s.len());
        for (i, &u) in s.iter().enumerate() {
            for (j, &v) in s.iter().enumerate().skip(i + 1) {
                if self.adj[u].get(v) {
                    g.adj[i].set(j);
                    g.adj[j].set(i);
                    g.m += 1;
                }
            }
        }
        Ok((g, s.to_vec()))
    }

    /// Adjacency matrix as a dense symmetric 0/1 matrix.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| {
            if i != j && self.adj[i].get(j) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// True if no two vertices of `s` are adjacent. Panics on out-of-range
    /// ids; duplicate entries are allowed and ignored.
    pub fn is_independent_set(&self, s: &[usize]) -> bool {
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                if self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Edge count of the subgraph induced by `s` (given as a bitset).
    pub(crate) fn edges_within(&self, s: &Bits) -> usize {
        s.iter_ones()
            .map(|v| self.adj[v].and_count(s))
            .sum::<usize>()
            / 2
    }
}
