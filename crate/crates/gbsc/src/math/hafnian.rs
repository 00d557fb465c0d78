//! Hafnian evaluation and the brute-force perfect-matching oracle.
//!
//! The hafnian of a symmetric matrix sums, over all perfect matchings of the
//! index set, the product of matched entries; on a 0/1 adjacency matrix it
//! counts perfect matchings. Diagonal entries never participate.
//!
//! Two interchangeable backends:
//! - `hafnian_expansion`: memoized expansion over the lowest remaining index
//!   (reference; dims ≤ 20),
//! - `hafnian_inclusion_exclusion`: signed sum over subsets of index pairs
//!   with trace-power coefficient extraction, O(2^(dim/2)·poly) (fast path).
//!
//! `hafnian` picks an exact integer path for 0/1 matrices when it fits and
//! the float fast path otherwise.

use super::SymMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default dimension cap for `hafnian`.
pub const DEFAULT_HAFNIAN_LIMIT: usize = 40;

/// Largest dimension handled by the subset-DP exact/reference backends.
const EXPANSION_LIMIT: usize = 20;

/// Vertex cap for the brute-force matching oracle.
const ORACLE_LIMIT: usize = 16;

/// Hafnian with the default dimension cap.
pub fn hafnian(a: &SymMatrix) -> Result<f64> {
    hafnian_with_limit(a, DEFAULT_HAFNIAN_LIMIT)
}

/// Hafnian of `a`; errors if `a.dim() > limit`.
///
/// 0/1 matrices up to dim 20 are evaluated exactly in integers (the result is
/// below 2^53, so the returned f64 is still exact); everything else goes
/// through the float inclusion–exclusion backend.
pub fn hafnian_with_limit(a: &SymMatrix, limit: usize) -> Result<f64> {
    let n = a.dim();
    if n > limit {
        return Err(Error::DimensionTooLarge {
            what: "hafnian",
            got: n,
            limit,
        });
    }
    if n % 2 == 1 {
        return Ok(0.0);
    }
    if n == 0 {
        return Ok(1.0);
    }
    if n <= EXPANSION_LIMIT && a.is_zero_one() {
        let adj = zero_one_masks(a);
        let mut scratch = Vec::new();
        return Ok(pm_count_compact(&adj, &mut scratch) as f64);
    }
    hafnian_inclusion_exclusion(a)
}

fn zero_one_masks(a: &SymMatrix) -> Vec<u32> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            let mut m = 0u32;
            for j in 0..n {
                if i != j && a.get(i, j) == 1.0 {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect()
}

/// Reference backend: expansion over the lowest remaining index, memoized
/// bottom-up over index subsets. Exact flow of the textbook recursion
/// Haf(A) = Σ_j a[0][j]·Haf(A \ {0,j}); practical up to dim 20.
pub fn hafnian_expansion(a: &SymMatrix) -> Result<f64> {
    let n = a.dim();
    if n > EXPANSION_LIMIT {
        return Err(Error::DimensionTooLarge {
            what: "hafnian first-index expansion",
            got: n,
            limit: EXPANSION_LIMIT,
        });
    }
    if n % 2 == 1 {
        return Ok(0.0);
    }
    if n == 0 {
        return Ok(1.0);
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut f = vec![0.0f64; 1usize << n];
    f[0] = 1.0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut acc = 0.0;
        let mut nb = rest;
        while nb != 0 {
            let j = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let w = a.get(i, j);
            if w != 0.0 {
                acc += w * f[(rest & !(1 << j)) as usize];
            }
        }
        f[mask as usize] = acc;
    }
    Ok(f[full as usize])
}

/// Fast backend: for each subset S of the index pairs (2r, 2r+1), take the
/// submatrix B_S, swap the rows of each pair (X B_S), and extract the
/// m-th coefficient of exp(Σ_j tr((X B_S)^j) x^j / (2j)); the signed sum
/// over subsets is the hafnian. O(2^(dim/2)·poly(dim)).
#[allow(clippy::needless_range_loop)] // index loops mirror the matrix algebra
pub fn hafnian_inclusion_exclusion(a: &SymMatrix) -> Result<f64> {
    let n = a.dim();
    if n % 2 == 1 {
        return Ok(0.0);
    }
    if n == 0 {
        return Ok(1.0);
    }
    let m = n / 2;
    let mut total = 0.0f64;
    let mut idx: Vec<usize> = Vec::with_capacity(n);
    // Dense buffers reused across subsets (largest case: s = m).
    let mut xb = vec![0.0f64; n * n];
    let mut pow = vec![0.0f64; n * n];
    let mut tmp = vec![0.0f64; n * n];
    let mut traces = vec![0.0f64; m + 1];
    let mut coeff = vec![0.0f64; m + 1];

    for subset in 1u64..(1 << m) {
        idx.clear();
        let mut bits = subset;
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            idx.push(2 * r);
            idx.push(2 * r + 1);
        }
        let s2 = idx.len();

        // X B: rows of each pair swapped; diagonal of `a` is irrelevant to
        // the hafnian and is zeroed here so it cannot leak into the traces.
        for r in 0..s2 {
            let src = if r % 2 == 0 { r + 1 } else { r - 1 };
            for c in 0..s2 {
                let v = if idx[src] == idx[c] {
                    0.0
                } else {
                    a.get(idx[src], idx[c])
                };
                xb[r * s2 + c] = v;
            }
        }

        // tr((XB)^j) for j = 1..m.
        pow[..s2 * s2].copy_from_slice(&xb[..s2 * s2]);
        for j in 1..=m {
            let mut t = 0.0;
            for d in 0..s2 {
                t += pow[d * s2 + d];
            }
            traces[j] = t;
            if j < m {
                matmul(&pow, &xb, &mut tmp, s2);
                pow[..s2 * s2].copy_from_slice(&tmp[..s2 * s2]);
            }
        }

        // e = exp(Σ_j traces[j] x^j / (2j)) truncated at x^m via
        // k·e_k = Σ_j (traces[j]/2)·e_{k−j}.
        coeff[0] = 1.0;
        for k in 1..=m {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += 0.5 * traces[j] * coeff[k - j];
            }
            coeff[k] = acc / k as f64;
        }

        let sign = if (m - subset.count_ones() as usize).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        total += sign * coeff[m];
    }
    Ok(total)
}

fn matmul(a: &[f64], b: &[f64], out: &mut [f64], n: usize) {
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = 0.0;
        }
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
}

/// Exhaustive perfect-matching count: match the lowest unmatched vertex with
/// every neighbor and recurse. Independent of the hafnian backends; capped at
/// 16 vertices.
pub fn perfect_matching_count(g: &Graph) -> Result<u128> {
    let n = g.vertex_count();
    if n > ORACLE_LIMIT {
        return Err(Error::DimensionTooLarge {
            what: "perfect matching oracle",
            got: n,
            limit: ORACLE_LIMIT,
        });
    }
    if n % 2 == 1 {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| {
            let mut m = 0u32;
            for u in g.neighbors(v) {
                m |= 1 << u;
            }
            m
        })
        .collect();
    let full: u32 = if n == 0 { 0 } else { (1 << n) - 1 };
    fn count(mask: u32, adj: &[u32]) -> u128 {
        if mask == 0 {
            return 1;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut total = 0u128;
        let mut nb = adj[i] & rest;
        while nb != 0 {
            let j = nb.trailing_zeros();
            nb &= nb - 1;
            total += count(rest & !(1 << j), adj);
        }
        total
    }
    Ok(count(full, &adj))
}

/// Perfect-matching count of the subgraph on `adj` (compact adjacency masks
/// over at most 22 vertices), via subset DP; entry point for the sampler's
/// weight loop. `scratch` is grown as needed and may be reused across calls
/// to skip the zeroing cost.
pub(crate) fn pm_count_compact(adj: &[u32], scratch: &mut Vec<u64>) -> u64 {
    let t = adj.len();
    if t % 2 == 1 {
        return 0;
    }
    if t == 0 {
        return 1;
    }
    pm_counts_all(adj, scratch);
    scratch[(1usize << t) - 1]
}

/// Fills `out[m]` with the perfect-matching count of the vertex set `m`, for
/// every even-popcount mask over the universe 0..adj.len(); odd-popcount
/// entries are left untouched (their count is zero by parity) and must not
/// be read when `out` is reused across calls.
pub(crate) fn pm_counts_all(adj: &[u32], out: &mut Vec<u64>) {
    let t = adj.len();
    debug_assert!(t <= 22, "subset DP limited to 22 vertices");
    if out.len() < (1usize << t) {
        out.resize(1usize << t, 0);
    }
    out[0] = 1;
    if t == 0 {
        return;
    }
    let full: u32 = (1 << t) - 1;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut acc = 0u64;
        let mut nb = adj[i] & rest;
        while nb != 0 {
            let j = nb.trailing_zeros();
            nb &= nb - 1;
            acc += out[(rest & !(1 << j)) as usize];
        }
        out[mask as usize] = acc;
    }
}
