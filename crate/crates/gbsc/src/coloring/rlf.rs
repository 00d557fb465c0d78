//! Recursive largest-first coloring: build one color class at a time.

use super::Coloring;
use crate::bits::Bits;
use crate::graph::Graph;

/// Builds each color class greedily: seed it with the highest-degree
/// uncolored vertex, then repeatedly add the candidate (uncolored, not
/// adjacent to the class) with the most neighbors among the uncolored
/// vertices that ARE adjacent to the class, ties by minimum uncolored
/// degree and then smallest id. Classes are closed when no candidate
/// remains; the remainder recurses with a fresh color.
pub fn rlf(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let mut col = Coloring::uncolored(n);
    let mut uncolored = Bits::ones(n);
    let mut remaining = n;
    let mut color = 0usize;

    while remaining > 0 {
        // Seed: maximum degree within the uncolored subgraph, smallest id.
        let seed = uncolored
            .iter_ones()
            .max_by_key(|&v| (g.adj_row(v).and_count(&uncolored), std::cmp::Reverse(v)))
            .expect("remaining > 0");

        // blocked: uncolored vertices adjacent to the class so far.
        let mut blocked = Bits::new(n);
        let mut class = vec![seed];
        add_to_blocked(g, seed, &uncolored, &mut blocked);

        loop {
            let mut best: Option<(usize, std::cmp::Reverse<usize>, std::cmp::Reverse<usize>)> =
                None;
            let mut pick = None;
            for v in uncolored.iter_ones() {
                if blocked.get(v) || class.contains(&v) {
                    continue;
                }
                let key = (
                    g.adj_row(v).and_count(&blocked),
                    std::cmp::Reverse(g.adj_row(v).and_count(&uncolored)),
                    std::cmp::Reverse(v),
                );
                if best.is_none_or(|b| key > b) {
                    best = Some(key);
                    pick = Some(v);
                }
            }
            let Some(v) = pick else { break };
            class.push(v);
            add_to_blocked(g, v, &uncolored, &mut blocked);
        }

        for &v in &class {
            col.set(v, color);
            uncolored.clear(v);
        }
        remaining -= class.len();
        color += 1;
    }
    debug_assert!(super::is_valid(g, &col));
    col
}

fn add_to_blocked(g: &Graph, v: usize, uncolored: &Bits, blocked: &mut Bits) {
    for u in g.neighbors(v) {
        if uncolored.get(u) {
            blocked.set(u);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_valid;
    use crate::graph::erdos_renyi;

    #[test]
    fn complete_and_edgeless_extremes() {
        let k5 = erdos_renyi(5, 1.0, 0).unwrap();
        assert_eq!(rlf(&k5).palette_size(), 5);
        assert_eq!(rlf(&Graph::empty(7)).palette_size(), 1);
        assert_eq!(rlf(&Graph::empty(0)).palette_size(), 0);
    }

    #[test]
    fn even_cycle_alternates_into_two_classes() {
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let col = rlf(&c6);
        assert!(is_valid(&c6, &col));
        assert_eq!(col.palette_size(), 2);
    }

    #[test]
    fn random_graphs_always_valid() {
        for seed in 0..30 {
            let g = erdos_renyi(18, 0.5, seed).unwrap();
            let col = rlf(&g);
            assert!(col.is_total());
            assert!(is_valid(&g, &col));
        }
    }
}
