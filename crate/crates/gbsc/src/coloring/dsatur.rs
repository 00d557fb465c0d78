//! Saturation-driven greedy coloring.

use super::Coloring;
use crate::bits::Bits;
use crate::graph::Graph;

/// Colors vertices in order of decreasing saturation (number of distinct
/// colors already present in the neighborhood), breaking ties by degree
/// within the uncolored subgraph and then by smallest id; each vertex gets
/// the smallest feasible color. Deterministic and always valid.
pub fn dsatur(g: &Graph) -> Coloring {
    dsatur_with_order(g).0
}

/// [`dsatur`] plus the order in which vertices were selected; the exact
/// solver branches over this order.
pub(crate) fn dsatur_with_order(g: &Graph) -> (Coloring, Vec<usize>) {
    let n = g.vertex_count();
    let mut col = Coloring::uncolored(n);
    let mut order = Vec::with_capacity(n);
    if n == 0 {
        return (col, order);
    }
    // neighbor_colors[v] tracks which colors v's colored neighbors carry;
    // color indices never exceed n − 1.
    let mut neighbor_colors: Vec<Bits> = vec![Bits::new(n); n];
    let mut saturation = vec![0usize; n];
    let mut uncolored = Bits::ones(n);

    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in uncolored.iter_ones() {
            let key = (saturation[v], g.adj_row(v).and_count(&uncolored));
            if best.is_none_or(|(s, d, _)| key > (s, d)) {
                best = Some((key.0, key.1, v));
            }
        }
        let (_, _, v) = best.expect("uncolored vertex remains");
        let color = (0..n)
            .find(|&c| !neighbor_colors[v].get(c))
            .expect("at most n − 1 neighbor colors");
        col.set(v, color);
        order.push(v);
        uncolored.clear(v);
        for u in g.neighbors(v) {
            if !neighbor_colors[u].get(color) {
                neighbor_colors[u].set(color);
                saturation[u] += 1;
            }
        }
    }
    debug_assert!(super::is_valid(g, &col));
    (col, order)
}
