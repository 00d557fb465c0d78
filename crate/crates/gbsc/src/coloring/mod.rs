//! Vertex colorings and the classical heuristics used as baselines.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::BTreeSet;

mod dsatur;
mod rlf;
mod sli;

pub use dsatur::dsatur;
pub use rlf::rlf;
pub use sli::sli;

pub(crate) use dsatur::dsatur_with_order;

/// A (possibly partial) assignment of color indices to vertices.
///
/// Vertices without an entry are uncovered; validity only constrains edges
/// with both ends covered, so partial colorings can be assembled
/// incrementally and checked at every step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Option<usize>>,
}

impl Coloring {
    /// All `n` vertices uncovered.
    pub fn uncolored(n: usize) -> Self {
        Coloring {
            colors: vec![None; n],
        }
    }

    /// Total coloring from one color per vertex.
    pub fn from_total(colors: Vec<usize>) -> Self {
        Coloring {
            colors: colors.into_iter().map(Some).collect(),
        }
    }

    /// Number of vertices the coloring is defined over.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color_of(&self, v: usize) -> Option<usize> {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, color: usize) {
        self.colors[v] = Some(color);
    }

    /// True when every vertex is covered.
    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Number of distinct colors in use.
    pub fn palette_size(&self) -> usize {
        self.colors.iter().flatten().collect::<BTreeSet<_>>().len()
    }

    /// Covered vertices with their colors, ascending by vertex.
    pub fn assignments(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
    }
}

/// True iff no edge with both ends covered is monochromatic. Edges touching
/// an uncovered vertex are ignored, so a partial coloring of a conflicting
/// pair is still valid until both ends are assigned.
pub fn is_valid(g: &Graph, col: &Coloring) -> bool {
    debug_assert_eq!(g.vertex_count(), col.len());
    g.edges()
        .all(|(u, v)| match (col.color_of(u), col.color_of(v)) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
}

/// Colors used beyond the chromatic number: palette − chi. Rejects partial
/// or invalid colorings and chi = 0; the result can only be negative if the
/// supplied chi is not actually the chromatic number.
pub fn excess_colors(g: &Graph, col: &Coloring, chi: usize) -> Result<i64> {
    if chi == 0 {
        return Err(Error::ZeroColors);
    }
    if let Some(v) = (0..col.len()).find(|&v| col.color_of(v).is_none()) {
        return Err(Error::PartialColoring(v));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| col.color_of(u) == col.color_of(v)) {
        return Err(Error::InvalidColoring(u, v));
    }
    Ok(col.palette_size() as i64 - chi as i64)
}
