//! Smallest-last greedy coloring with color interchange.

use super::Coloring;
use crate::bits::Bits;
use crate::graph::Graph;

/// Orders vertices by iteratively peeling a minimum-degree vertex (ties:
/// smallest id) so the peel order, reversed, colors dense cores first. Each
/// vertex takes the smallest feasible color; when none exists, an
/// interchange is attempted before a new color is opened: find a color pair
/// (i, j) whose two-colored subgraph has no connected component touching
/// both an i- and a j-colored neighbor of the vertex, flip i↔j on the
/// components holding its i-colored neighbors, and assign i.
pub fn sli(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let order = smallest_last_order(g);
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut palette = 0usize;

    for &v in order.iter().rev() {
        let mut used = Bits::new(n.max(1));
        for u in g.neighbors(v) {
            if let Some(c) = colors[u] {
                used.set(c);
            }
        }
        let feasible = (0..palette).find(|&c| !used.get(c));
        let color = match feasible {
            Some(c) => c,
            None => match interchange_color(g, &mut colors, v, palette) {
                Some(c) => c,
                None => {
                    palette += 1;
                    palette - 1
                }
            },
        };
        colors[v] = Some(color);
    }

    let col = Coloring { colors };
    debug_assert!(super::is_valid(g, &col));
    col
}

/// Peel order: element 0 is removed first and therefore colored last.
fn smallest_last_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut remaining = Bits::ones(n);
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = remaining
            .iter_ones()
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        remaining.clear(v);
        order.push(v);
        for u in g.neighbors(v) {
            if remaining.get(u) {
                degree[u] -= 1;
            }
        }
    }
    order
}

/// Attempts to free a color for `v` (all of 0..palette are present in its
/// neighborhood): scans pairs i < j in lexicographic order, finds the
/// connected components of the subgraph on colors {i, j}, and when no
/// component holds both an i- and a j-colored neighbor of `v`, flips every
/// component holding an i-colored neighbor and returns i.
fn interchange_color(
    g: &Graph,
    colors: &mut [Option<usize>],
    v: usize,
    palette: usize,
) -> Option<usize> {
    let n = g.vertex_count();
    for i in 0..palette {
        for j in (i + 1)..palette {
            // Component labels over the i/j-colored vertices.
            let mut comp = vec![usize::MAX; n];
            let mut comp_count = 0usize;
            for s in 0..n {
                if comp[s] != usize::MAX || !matches!(colors[s], Some(c) if c == i || c == j) {
                    continue;
                }
                let mut stack = vec![s];
                comp[s] = comp_count;
                while let Some(x) = stack.pop() {
                    for y in g.neighbors(x) {
                        if comp[y] == usize::MAX && matches!(colors[y], Some(c) if c == i || c == j)
                        {
                            comp[y] = comp_count;
                            stack.push(y);
                        }
                    }
                }
                comp_count += 1;
            }

            let mut comp_has_i_neighbor = vec![false; comp_count];
            let mut comp_has_j_neighbor = vec![false; comp_count];
            for u in g.neighbors(v) {
                match colors[u] {
                    Some(c) if c == i => comp_has_i_neighbor[comp[u]] = true,
                    Some(c) if c == j => comp_has_j_neighbor[comp[u]] = true,
                    _ => {}
                }
            }
            if comp_has_i_neighbor
                .iter()
                .zip(&comp_has_j_neighbor)
                .any(|(&a, &b)| a && b)
            {
                continue;
            }

            for u in 0..n {
                if comp[u] != usize::MAX && comp_has_i_neighbor[comp[u]] {
                    colors[u] = match colors[u] {
                        Some(c) if c == i => Some(j),
                        Some(c) if c == j => Some(i),
                        other => other,
                    };
                }
            }
            debug_assert!(
                g.edges().all(|(a, b)| {
                    colors[a].is_none() || colors[b].is_none() || colors[a] != colors[b]
                }),
                "interchange broke the partial coloring"
            );
            return Some(i);
        }
    }
    None
}
