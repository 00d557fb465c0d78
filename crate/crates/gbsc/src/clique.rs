//! Clique extraction and local search: shrink a sampled subset to a clique,
//! then enlarge it by alternating greedy growth with plateau swaps.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from_seed;
use rand::Rng;

/// A set of pairwise-adjacent vertices tied to its host graph.
#[derive(Debug, Clone)]
pub struct Clique<'g> {
    host: &'g Graph,
    vertices: Vec<usize>,
}

impl<'g> Clique<'g> {
    /// Validates that `vertices` are distinct, in range, and pairwise
    /// adjacent in `host`.
    pub fn new(host: &'g Graph, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        if let Some(&v) = vertices.last() {
            if v >= host.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: host.vertex_count(),
                });
            }
        }
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if !host.has_edge(u, v) {
                    return Err(Error::NotAClique(u, v));
                }
            }
        }
        Ok(Clique { host, vertices })
    }

    /// Members, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }
}

/// True iff every pair in `s` is adjacent; sets of size ≤ 1 are vacuously
/// cliques. `s` must contain valid, distinct vertices.
pub fn is_clique(g: &Graph, s: &[usize]) -> bool {
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// Reduces `s` to a clique by repeatedly deleting a vertex of minimum degree
/// in the current induced subgraph, ties broken uniformly at random. The
/// result is a subset of `s`; a clique input comes back unchanged.
pub fn shrink<'g>(g: &'g Graph, s: &[usize], seed: u64) -> Clique<'g> {
    debug_assert!(s.iter().all(|&v| v < g.vertex_count()));
    let mut rng = rng_from_seed(seed);
    let mut member = Bits::new(g.vertex_count());
    for &v in s {
        member.set(v);
    }
    let mut size = member.count();
    let mut edges = g.edges_within(&member);
    let mut ties: Vec<usize> = Vec::new();
    while size > 1 && edges * 2 < size * (size - 1) {
        let mut min_deg = usize::MAX;
        ties.clear();
        for v in member.iter_ones() {
            let d = g.adj_row(v).and_count(&member);
            if d < min_deg {
                min_deg = d;
                ties.clear();
                ties.push(v);
            } else if d == min_deg {
                ties.push(v);
            }
        }
        let victim = ties[rng.gen_range(0..ties.len())];
        member.clear(victim);
        size -= 1;
        edges -= min_deg;
    }
    let vertices: Vec<usize> = member.iter_ones().collect();
    debug_assert!(is_clique(g, &vertices));
    Clique { host: g, vertices }
}

/// Local search around `start`: each iteration runs a growth phase (add a
/// uniformly chosen vertex adjacent to every member, repeated until none
/// exists) followed by one plateau swap (exchange a member for an outside
/// vertex adjacent to all other members). Stops when iterations run out,
/// or after `|clique|` consecutive plateau moves yield no growth, or when
/// the clique is maximal and swap-free. The result is maximal and never
/// smaller than `start`.
pub fn search<'g>(
    g: &'g Graph,
    start: &[usize],
    iterations: usize,
    seed: u64,
) -> Result<Clique<'g>> {
    let start = Clique::new(g, start.to_vec())?;
    let n = g.vertex_count();
    let mut rng = rng_from_seed(seed);
    let mut member = Bits::new(n);
    for &v in start.vertices() {
        member.set(v);
    }
    let mut size = start.len();
    let mut stall = 0usize;

    let grow = |member: &mut Bits, size: &mut usize, rng: &mut rand_chacha::ChaCha8Rng| {
        let mut grew = false;
        loop {
            let candidates = growth_candidates(g, member);
            if candidates.is_empty() {
                return grew;
            }
            let v = candidates[rng.gen_range(0..candidates.len())];
            member.set(v);
            *size += 1;
            grew = true;
        }
    };

    for _ in 0..iterations {
        if grow(&mut member, &mut size, &mut rng) {
            stall = 0;
        }
        let swaps = plateau_candidates(g, &member, size);
        if swaps.is_empty() {
            break; // maximal and swap-free: frozen
        }
        let (v_in, v_out) = swaps[rng.gen_range(0..swaps.len())];
        member.clear(v_out);
        member.set(v_in);
        stall += 1;
        if stall >= size.max(1) {
            break;
        }
    }
    grow(&mut member, &mut size, &mut rng);

    let vertices: Vec<usize> = member.iter_ones().collect();
    debug_assert!(is_clique(g, &vertices));
    debug_assert!(vertices.len() >= start.len());
    Ok(Clique { host: g, vertices })
}

/// Vertices outside the clique adjacent to every member.
fn growth_candidates(g: &Graph, member: &Bits) -> Vec<usize> {
    let mut common = Bits::ones(g.vertex_count());
    for v in member.iter_ones() {
        common.and_with(g.adj_row(v));
    }
    common.iter_ones().filter(|&v| !member.get(v)).collect()
}

/// Pairs (incoming, outgoing): an outside vertex adjacent to all members but
/// one, and that missing member.
fn plateau_candidates(g: &Graph, member: &Bits, size: usize) -> Vec<(usize, usize)> {
    if size == 0 {
        return Vec::new();
    }
    let mut swaps = Vec::new();
    for v in 0..g.vertex_count() {
        if member.get(v) {
            continue;
        }
        if g.adj_row(v).and_count(member) != size - 1 {
            continue;
        }
        let missing = member
            .iter_ones()
            .find(|&u| !g.has_edge(u, v))
            .expect("exactly one member is not adjacent");
        swaps.push((v, missing));
    }
    swaps
}
