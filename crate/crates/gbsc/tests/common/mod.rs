//! Helpers shared by the integration suites: independent exact max-clique
//! oracles and a few named graphs.

#![allow(dead_code)] // each test target uses its own subset

use gbsc::graph::Graph;

/// Exact max-clique size by Bron-Kerbosch with pivoting over u64 masks.
/// Test-scale only: at most 64 vertices.
pub fn max_clique_size(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 64, "clique oracle handles at most 64 vertices");
    if n == 0 {
        return 0;
    }
    let mut adj = vec![0u64; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    bron_kerbosch(&adj, 0, full, 0, &mut best);
    best
}

fn bron_kerbosch(adj: &[u64], r: usize, mut p: u64, mut x: u64, best: &mut usize) {
    if p == 0 && x == 0 {
        *best = (*best).max(r);
        return;
    }
    if r + p.count_ones() as usize <= *best {
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .expect("p | x is nonempty here");
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, r + 1, p & adj[v], x & adj[v], best);
        p &= !(1u64 << v);
        x |= 1u64 << v;
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Exact max-clique size by scanning every vertex subset; n ≤ 20. Slower
/// second oracle used to validate the branch-and-bound one.
pub fn max_clique_size_scan(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20, "subset scan handles at most 20 vertices");
    let mut adj = vec![0u32; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize <= best {
            continue;
        }
        let ok = (0..n)
            .filter(|&v| mask & (1 << v) != 0)
            .all(|v| adj[v] & mask == mask & !(1 << v));
        if ok {
            best = mask.count_ones() as usize;
        }
    }
    best
}

/// The Petersen graph: outer 5-cycle, inner 5-cycle at step 2, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    Graph::from_edges(a + b, &edges).unwrap()
}
