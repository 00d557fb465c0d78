//! The k-copy reduction from coloring to clique finding.
//!
//! `augment(g, k)` builds a graph on k copies of every vertex: copy `vⁱ`
//! stands for "v gets color i". Conflict edges join equal-colored copies of
//! adjacent vertices; clonal edges join all copies of one vertex, so at most
//! one color per vertex survives in any independent set. Independent sets of
//! the augmented graph (cliques of its complement) therefore project to valid
//! partial colorings of the base graph.

use super::Graph;
use crate::error::{Error, Result};

/// A base graph together with its k-copy augmentation.
#[derive(Clone, Debug)]
pub struct AugmentedGraph {
    base: Graph,
    k: usize,
    graph: Graph,
}

/// Builds the augmented k-graph of `g`.
///
/// The result has `k·n` vertices and `k·m + n·k(k−1)/2` edges: one conflict
/// edge `(uⁱ, vⁱ)` per base edge `(u,v)` and color `i`, plus a clonal clique
/// `K_k` over the copies of each base vertex.
pub fn augment(g: &Graph, k: usize) -> Result<AugmentedGraph> {
    if k == 0 {
        return Err(Error::ZeroColors);
    }
    let n = g.vertex_count();
    let nk = n
        .checked_mul(k)
        .ok_or_else(|| Error::InvalidConfig(format!("augmented graph size {n}·{k} overflows")))?;
    let mut aug = Graph::empty(nk);
    for (u, v) in g.edges() {
        for i in 0..k {
            aug.insert_edge(u * k + i, v * k + i)?;
        }
    }
    for v in 0..n {
        for i in 0..k {
            for j in (i + 1)..k {
                aug.insert_edge(v * k + i, v * k + j)?;
            }
        }
    }
    debug_assert_eq!(aug.edge_count(), k * g.edge_count() + n * k * (k - 1) / 2);
    Ok(AugmentedGraph {
        base: g.clone(),
        k,
        graph: aug,
    })
}

impl AugmentedGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// The augmented graph itself (k·n vertices).
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Index of copy `vⁱ`.
    pub fn copy_index(&self, v: usize, i: usize) -> usize {
        debug_assert!(v < self.base.vertex_count() && i < self.k);
        v * self.k + i
    }

    /// Inverse of `copy_index`: augmented vertex → (base vertex, color).
    pub fn base_of(&self, aug_vertex: usize) -> (usize, usize) {
        debug_assert!(aug_vertex < self.graph.vertex_count());
        (aug_vertex / self.k, aug_vertex % self.k)
    }

    /// Projects a set of augmented vertices to (base vertex, color) pairs.
    ///
    /// Multiplicity is preserved: two copies of the same base vertex yield
    /// two pairs. The projection is injective exactly when `s` is an
    /// independent set of the augmented graph (clonal edges force it).
    pub fn project(&self, s: &[usize]) -> Result<Vec<(usize, usize)>> {
        let nk = self.graph.vertex_count();
        s.iter()
            .map(|&a| {
                if a >= nk {
                    Err(Error::VertexOutOfRange { vertex: a, n: nk })
                } else {
                    Ok(self.base_of(a))
                }
            })
            .collect()
    }
}
