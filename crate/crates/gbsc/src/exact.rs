//! Exact chromatic numbers for desk-scale graphs.
//!
//! Two independent routes: a saturation-ordered branch-and-bound solver
//! ([`chromatic_exact`]) for graphs up to a few dozen vertices, and a literal
//! minimum-cover oracle over maximal independent sets
//! ([`chromatic_set_cover_oracle`]) for tiny graphs. The two agree wherever
//! both apply, which the tests exploit as a cross-check.

use std::time::{Duration, Instant};

use crate::bits::Bits;
use crate::coloring::{dsatur_with_order, is_valid, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::hoffman_bound;

/// Per-instance budget for [`chromatic_exact`] unless the caller overrides it.
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(300);

/// Vertex cap for [`maximal_independent_sets`] (subset scan over 2^n masks).
pub const MIS_LIMIT: usize = 20;

/// Vertex cap for [`chromatic_set_cover_oracle`] (exhaustive cover search).
pub const COVER_ORACLE_LIMIT: usize = 12;

/// Outcome of an exact chromatic-number computation.
#[derive(Debug, Clone)]
pub struct ExactResult {
    /// Chromatic number, or the best-known upper bound when `timed_out`.
    pub chi: usize,
    /// A valid coloring whose palette size equals `chi`.
    pub witness: Coloring,
    /// Branch-and-bound nodes visited.
    pub nodes_explored: u64,
    /// True when the time limit expired before the search space was
    /// exhausted; `chi` is then an upper bound, never silently exact.
    pub timed_out: bool,
}

/// Computes the chromatic number by branch-and-bound.
///
/// Vertices are branched in the order the saturation heuristic selects
/// them; its coloring is the initial incumbent. The search is cut below by
/// the larger of a greedily grown clique and the spectral bound
/// [`hoffman_bound`], and at each vertex tries the feasible existing color
/// classes first and then at most one brand-new class, so color indices
/// above the current palette are never branched on (symmetry breaking).
///
/// When the time limit expires the incumbent is returned with
/// `timed_out = true`; the result is exact otherwise.
pub fn chromatic_exact(g: &Graph, time_limit: Duration) -> ExactResult {
    let n = g.vertex_count();
    if n == 0 {
        return ExactResult {
            chi: 0,
            witness: Coloring::uncolored(0),
            nodes_explored: 0,
            timed_out: false,
        };
    }
    let (incumbent, order) = dsatur_with_order(g);
    let upper = incumbent.palette_size();
    // The spectral bound is exact real arithmetic in theory; shave the float
    // slack before rounding up so it can never overshoot the true value.
    let spectral = (hoffman_bound(g) - 1e-6).ceil() as usize;
    let lower = greedy_clique(g).len().max(spectral).max(1);
    debug_assert!(lower <= upper);
    if lower == upper {
        return ExactResult {
            chi: upper,
            witness: incumbent,
            nodes_explored: 0,
            timed_out: false,
        };
    }

    let mut searcher = Searcher {
        g,
        order,
        colors: vec![None; n],
        best_colors: incumbent,
        best_palette: upper,
        lower,
        nodes: 0,
        deadline: Instant::now() + time_limit,
        timed_out: false,
        done: false,
    };
    if Instant::now() >= searcher.deadline {
        searcher.timed_out = true;
    } else {
        searcher.dive(0, 0);
    }
    debug_assert!(is_valid(g, &searcher.best_colors));
    debug_assert_eq!(searcher.best_colors.palette_size(), searcher.best_palette);
    ExactResult {
        chi: searcher.best_palette,
        witness: searcher.best_colors,
        nodes_explored: searcher.nodes,
        timed_out: searcher.timed_out,
    }
}

struct Searcher<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    colors: Vec<Option<usize>>,
    best_colors: Coloring,
    best_palette: usize,
    lower: usize,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
    done: bool,
}

impl Searcher<'_> {
    /// Extends the partial coloring at `order[pos..]`; `used` is the number
    /// of color classes currently in use (always indices `0..used`).
    fn dive(&mut self, pos: usize, used: usize) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out || self.done || used >= self.best_palette {
            return;
        }
        if pos == self.order.len() {
            // Guarded above: reaching a leaf strictly improves the incumbent.
            self.best_palette = used;
            self.best_colors = Coloring::uncolored(self.colors.len());
            for (v, c) in self.colors.iter().enumerate() {
                if let Some(c) = c {
                    self.best_colors.set(v, *c);
                }
            }
            if used == self.lower {
                self.done = true;
            }
            return;
        }
        let v = self.order[pos];
        let mut forbidden = Bits::new(self.best_palette);
        for u in self.g.neighbors(v) {
            if let Some(c) = self.colors[u] {
                forbidden.set(c);
            }
        }
        for c in 0..used {
            if forbidden.get(c) {
                continue;
            }
            self.colors[v] = Some(c);
            self.dive(pos + 1, used);
            if self.timed_out || self.done {
                self.colors[v] = None;
                return;
            }
        }
        if used + 1 < self.best_palette {
            self.colors[v] = Some(used);
            self.dive(pos + 1, used + 1);
        }
        self.colors[v] = None;
    }
}

/// Largest clique found greedily: grow from every start vertex, always
/// adding the common neighbor of highest degree (smallest id on ties).
fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        let mut members = vec![start];
        let mut common = g.adj_row(start).clone();
        loop {
            let mut next: Option<(usize, usize)> = None;
            for v in common.iter_ones() {
                let d = g.degree(v);
                if next.is_none_or(|(bd, _)| d > bd) {
                    next = Some((d, v));
                }
            }
            let Some((_, v)) = next else { break };
            members.push(v);
            common.and_with(g.adj_row(v));
        }
        if members.len() > best.len() {
            members.sort_unstable();
            best = members;
        }
    }
    best
}

/// Enumerates every maximal independent set of `g`, each sorted ascending,
/// the family ordered by its bitmask ascending. No duplicates. Capped at
/// [`MIS_LIMIT`] vertices because the scan visits all 2^n subsets.
pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n > MIS_LIMIT {
        return Err(Error::DimensionTooLarge {
            what: "maximal independent set enumeration",
            got: n,
            limit: MIS_LIMIT,
        });
    }
    Ok(mis_masks(g)
        .into_iter()
        .map(|mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
        .collect())
}

/// All maximal independent sets as bitmasks, ascending. Independence is
/// computed incrementally over all subsets (strip the lowest vertex),
/// maximality by checking every outside vertex for an edge into the set.
fn mis_masks(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    debug_assert!(n <= MIS_LIMIT);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut independent = vec![false; 1 << n];
    independent[0] = true;
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        if mask != 0 {
            let low = mask.trailing_zeros() as usize;
            let rest = (mask & (mask - 1)) as usize;
            independent[mask as usize] = independent[rest] && adj[low] & mask == 0;
        }
        if independent[mask as usize] && (0..n).all(|v| mask & (1 << v) != 0 || adj[v] & mask != 0)
        {
            out.push(mask);
        }
    }
    out
}

/// Chromatic number as the minimum number of maximal independent sets whose
/// union covers every vertex, found by exhaustive search over cover sizes
/// 1, 2, … . Covering (rather than partitioning) is tight here: assigning
/// each multiply-covered vertex to its first covering set in list order
/// turns any optimal cover into a proper coloring of the same size.
pub fn chromatic_set_cover_oracle(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > COVER_ORACLE_LIMIT {
        return Err(Error::DimensionTooLarge {
            what: "independent-set cover oracle",
            got: n,
            limit: COVER_ORACLE_LIMIT,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let sets = mis_masks(g);
    let full = (1u32 << n) - 1;
    for k in 1..=n {
        if minimum_cover(&sets, full, k).is_some() {
            return Ok(k);
        }
    }
    unreachable!("every vertex lies in some maximal independent set");
}

/// First `k`-subset of `sets` (in index order) whose union is `full`, as
/// indices into `sets`. Prunes branches whose remaining suffix cannot
/// complete the cover; skips sets that add no new vertex, which is safe
/// because smaller cover sizes have already been ruled out.
fn minimum_cover(sets: &[u32], full: u32, k: usize) -> Option<Vec<usize>> {
    let mut suffix = vec![0u32; sets.len() + 1];
    for i in (0..sets.len()).rev() {
        suffix[i] = suffix[i + 1] | sets[i];
    }
    let mut chosen = Vec::with_capacity(k);
    fn rec(
        sets: &[u32],
        suffix: &[u32],
        full: u32,
        start: usize,
        left: usize,
        acc: u32,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if left == 0 {
            return acc == full;
        }
        if sets.len() - start < left || acc | suffix[start] != full {
            return false;
        }
        for i in start..sets.len() {
            if acc | sets[i] == acc {
                continue;
            }
            chosen.push(i);
            if rec(sets, suffix, full, i + 1, left - 1, acc | sets[i], chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if rec(sets, &suffix, full, 0, k, 0, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}
