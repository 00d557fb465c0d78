//! Mapping a graph onto a Gaussian device: Takagi factorization of the
//! adjacency matrix, a scaling factor chosen so the mean photon number hits a
//! target, and per-mode squeezing values.

use super::{jacobi_eigen, takagi, TakagiDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use num_complex::Complex64;

/// Bisection tolerance on the achieved mean photon number.
const PHOTON_TOLERANCE: f64 = 1e-6;

/// Gap kept between c·λ_max and 1 so every squeezing value stays finite.
const SCALING_MARGIN: f64 = 1e-12;

/// Device program for a graph: scaled Takagi factors plus squeezing values.
///
/// Invariants: `c·λ_k ∈ [0, 1)`, `squeezing[k] = arctanh(c·λ_k)`, and the
/// mean photon number implied by `c` matches `mean_photons` within 1e-6.
#[derive(Debug, Clone)]
pub struct GbsEncoding {
    takagi: TakagiDecomposition,
    c: f64,
    squeezing: Vec<f64>,
    mean_photons: f64,
}

impl GbsEncoding {
    /// Number of modes (one per vertex).
    pub fn modes(&self) -> usize {
        self.takagi.dim()
    }

    /// Singular values of the adjacency matrix, descending.
    pub fn lambdas(&self) -> &[f64] {
        self.takagi.lambdas()
    }

    /// Entry (i, k) of the Takagi unitary.
    pub fn unitary_entry(&self, i: usize, k: usize) -> Complex64 {
        self.takagi.unitary_entry(i, k)
    }

    /// Scaling factor applied to the singular values.
    pub fn scaling(&self) -> f64 {
        self.c
    }

    /// Per-mode squeezing values r_k = arctanh(c·λ_k).
    pub fn squeezing(&self) -> &[f64] {
        &self.squeezing
    }

    /// Mean photon number the scaling was solved for.
    pub fn mean_photons(&self) -> f64 {
        self.mean_photons
    }
}

/// Mean photon number of the program (λ, c): Σ_k (cλ_k)²/(1−(cλ_k)²).
///
/// Returns infinity when some c·λ_k reaches 1.
pub fn mean_photons_at(lambdas: &[f64], c: f64) -> f64 {
    let mut total = 0.0;
    for &l in lambdas {
        let x = (c * l) * (c * l);
        if x >= 1.0 {
            return f64::INFINITY;
        }
        total += x / (1.0 - x);
    }
    total
}

/// Solves Σ (cλ_k)²/(1−(cλ_k)²) = n_bar for c by bisection on
/// (0, (1−ε)/λ_max); the map is strictly increasing in c.
///
/// `n_bar = 0` yields c = 0. Errors when every λ is zero (or the target
/// exceeds what the clamped interval can reach) while n_bar > 0.
pub fn solve_scaling(lambdas: &[f64], n_bar: f64) -> Result<f64> {
    if !n_bar.is_finite() || n_bar < 0.0 {
        return Err(Error::InvalidScaling(n_bar));
    }
    if n_bar == 0.0 {
        return Ok(0.0);
    }
    let lambda_max = lambdas.iter().cloned().fold(0.0f64, f64::max);
    if lambda_max <= 0.0 {
        return Err(Error::UnreachableMeanPhotons {
            nbar: n_bar,
            reason: "all singular values are zero",
        });
    }
    let mut lo = 0.0f64;
    let mut hi = (1.0 - SCALING_MARGIN) / lambda_max;
    if mean_photons_at(lambdas, hi) < n_bar {
        return Err(Error::UnreachableMeanPhotons {
            nbar: n_bar,
            reason: "target exceeds the reachable range below c·λ_max = 1",
        });
    }
    // Bisect until the interval cannot shrink; the tolerance is only the
    // final acceptance gate, so well-conditioned cases (like the analytic
    // single-mode one) come out at float resolution.
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mean_photons_at(lambdas, mid) < n_bar {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = if (mean_photons_at(lambdas, lo) - n_bar).abs()
        <= (mean_photons_at(lambdas, hi) - n_bar).abs()
    {
        lo
    } else {
        hi
    };
    let residual = (mean_photons_at(lambdas, c) - n_bar).abs();
    if residual <= PHOTON_TOLERANCE {
        Ok(c)
    } else {
        Err(Error::UnreachableMeanPhotons {
            nbar: n_bar,
            reason: "bisection exhausted float resolution above tolerance",
        })
    }
}

/// Programs a device for `g`: Takagi-factor the adjacency matrix, solve the
/// scaling for `n_bar` mean photons, and derive squeezing values.
pub fn encode_graph(g: &Graph, n_bar: f64) -> Result<GbsEncoding> {
    if g.vertex_count() == 0 {
        return Err(Error::InvalidConfig(
            "cannot encode a graph with no vertices".into(),
        ));
    }
    let dec = takagi(&g.adjacency_matrix())?;
    let c = solve_scaling(dec.lambdas(), n_bar)?;
    let squeezing: Vec<f64> = dec.lambdas().iter().map(|&l| (c * l).atanh()).collect();
    debug_assert!(squeezing.iter().all(|r| r.is_finite()));
    Ok(GbsEncoding {
        takagi: dec,
        c,
        squeezing,
        mean_photons: n_bar,
    })
}

/// Spectral lower bound on the chromatic number: 1 + λ_max/(−λ_min) of the
/// adjacency spectrum, and 1 for edgeless graphs (zero spectrum).
pub fn hoffman_bound(g: &Graph) -> f64 {
    if g.edge_count() == 0 {
        return 1.0;
    }
    let eig = jacobi_eigen(&g.adjacency_matrix()).expect("adjacency eigendecomposition");
    let lambda_max = eig.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lambda_min = eig.values.iter().cloned().fold(f64::INFINITY, f64::min);
    // Any graph with an edge has λ_min ≤ −1 (zero trace, λ_max ≥ 1).
    debug_assert!(lambda_min < -0.5);
    1.0 + lambda_max / (-lambda_min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::erdos_renyi;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn zero_target_gives_zero_scaling() {
        assert_eq!(solve_scaling(&[1.0, 0.5], 0.0).unwrap(), 0.0);
    }

    #[test]
    fn single_mode_matches_closed_form() {
        // c²/(1−c²) = n̄ solves to c = √(n̄/(1+n̄)); bisection runs to float
        // resolution, so the match is essentially exact.
        for n_bar in [0.25, 1.0, 2.0, 8.5] {
            let c = solve_scaling(&[1.0], n_bar).unwrap();
            let analytic = (n_bar / (1.0 + n_bar)).sqrt();
            assert!((c - analytic).abs() <= 1e-12, "n̄ = {n_bar}: c = {c}");
        }
    }

    #[test]
    fn two_mode_residual_within_tolerance() {
        let lambdas = [0.9, 0.5];
        let c = solve_scaling(&lambdas, 2.0).unwrap();
        assert!((mean_photons_at(&lambdas, c) - 2.0).abs() <= 1e-6);
        assert!(c * 0.9 < 1.0);
    }

    #[test]
    fn unreachable_targets_error() {
        assert!(matches!(
            solve_scaling(&[0.0, 0.0], 1.0),
            Err(Error::UnreachableMeanPhotons { .. })
        ));
        assert!(solve_scaling(&[1.0], -1.0).is_err());
        assert!(solve_scaling(&[1.0], f64::NAN).is_err());
    }

    #[test]
    fn scaling_grows_with_target() {
        let lambdas = [1.3, 0.8, 0.2];
        let mut prev = 0.0;
        for n_bar in [0.5, 1.0, 2.0, 4.0, 8.0] {
            let c = solve_scaling(&lambdas, n_bar).unwrap();
            assert!(c > prev, "n_bar {n_bar}: {c} vs {prev}");
            prev = c;
        }
    }

    #[test]
    fn edgeless_encoding_with_zero_target() {
        let enc = encode_graph(&Graph::empty(3), 0.0).unwrap();
        assert!(enc.squeezing().iter().all(|&r| r == 0.0));
        assert_eq!(enc.scaling(), 0.0);
    }

    #[test]
    fn complete_graph_encoding_self_check() {
        let g = erdos_renyi(4, 1.0, 0).unwrap();
        let enc = encode_graph(&g, 2.0).unwrap();
        assert_eq!(enc.modes(), 4);
        assert_eq!(enc.squeezing().len(), 4);
        let achieved = mean_photons_at(enc.lambdas(), enc.scaling());
        assert!((achieved - 2.0).abs() <= 1e-6);
        for (&l, &r) in enc.lambdas().iter().zip(enc.squeezing()) {
            assert!((r - (enc.scaling() * l).atanh()).abs() <= 1e-12);
            assert!(enc.scaling() * l < 1.0);
        }
    }

    #[test]
    fn cycle_scaling_below_spectral_radius_inverse() {
        // λ_max(C5) = 2, so any valid scaling keeps c < 1/2.
        let enc = encode_graph(&cycle(5), 3.0).unwrap();
        assert!(enc.scaling() < 0.5);
        assert!((enc.lambdas()[0] - 2.0).abs() <= 1e-9);
    }

    #[test]
    fn hoffman_bound_known_spectra() {
        let k5 = erdos_renyi(5, 1.0, 0).unwrap();
        assert!((hoffman_bound(&k5) - 5.0).abs() <= 1e-8);
        // K_{3,3}: spectrum ±3 and zeros.
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        let k33 = Graph::from_edges(6, &edges).unwrap();
        assert!((hoffman_bound(&k33) - 2.0).abs() <= 1e-8);
        assert_eq!(hoffman_bound(&Graph::empty(4)), 1.0);
    }
}
