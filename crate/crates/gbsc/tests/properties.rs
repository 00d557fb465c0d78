//! Cross-module property tests on randomized inputs.

mod common;

use std::time::Duration;

use gbsc::coloring::{self, dsatur, rlf, sli, Coloring};
use gbsc::exact::chromatic_exact;
use gbsc::graph::{erdos_renyi, read_dimacs, write_dimacs, Graph};
use gbsc::math::{hafnian, takagi, SymMatrix};
use gbsc::pipeline::{find_cliques, GbscConfig};
use gbsc::split_seed;
use proptest::prelude::*;

fn er(n: usize, p: f64, seed: u64) -> Graph {
    erdos_renyi(n, p, seed).unwrap()
}

/// Block-diagonal join of two adjacency matrices.
fn block_diag(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    let (na, nb) = (a.dim(), b.dim());
    SymMatrix::from_fn(na + nb, |i, j| {
        if i < na && j < na {
            a.get(i, j)
        } else if i >= na && j >= na {
            b.get(i - na, j - na)
        } else {
            0.0
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // Matchings of disjoint graphs pair up independently, so the hafnian
    // must be multiplicative over diagonal blocks.
    #[test]
    fn hafnian_multiplies_over_disjoint_blocks(
        na in 0usize..=6, pa in 0.0f64..=1.0,
        nb in 1usize..=6, pb in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let ga = er(na, pa, split_seed(seed, 0));
        let gb = er(nb, pb, split_seed(seed, 1));
        let (a, b) = (ga.adjacency_matrix(), gb.adjacency_matrix());
        let joint = hafnian(&block_diag(&a, &b)).unwrap();
        let product = hafnian(&a).unwrap() * hafnian(&b).unwrap();
        prop_assert_eq!(joint, product);
    }

    #[test]
    fn takagi_reconstructs_random_symmetric_matrices(
        dim in 1usize..=8,
        entries in prop::collection::vec(-3.0f64..3.0, 64),
    ) {
        let a = SymMatrix::from_fn(dim, |i, j| entries[i.min(j) * 8 + i.max(j)]);
        let t = takagi(&a).unwrap();
        prop_assert!(t.reconstruction_error(&a) <= 1e-9);
        for w in t.lambdas().windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        prop_assert!(t.lambdas().iter().all(|&l| l >= 0.0));
    }

    // Every coloring method returns a valid total coloring whose palette
    // sits between the exact chromatic number and the vertex count.
    #[test]
    fn coloring_methods_are_valid_and_bounded(
        n in 1usize..=12,
        p in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let g = er(n, p, seed);
        let chi = chromatic_exact(&g, Duration::from_secs(30)).chi;
        let gbsc_cfg = GbscConfig::new(split_seed(seed, 7));
        let colorings = [
            dsatur(&g),
            rlf(&g),
            sli(&g),
            gbsc::pipeline::gbsc_color(&g, &gbsc_cfg).unwrap().0,
        ];
        for col in &colorings {
            prop_assert!(col.is_total());
            prop_assert!(coloring::is_valid(&g, col));
            prop_assert!(col.palette_size() >= chi);
            prop_assert!(col.palette_size() <= n);
        }
    }

    // Every sampled-and-hardened candidate is a clique of the complement
    // arena whose projection assigns each base vertex at most one copy and
    // never gives adjacent vertices the same copy index.
    #[test]
    fn sampled_cliques_project_to_partial_colorings(
        n in 1usize..=8,
        p in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let g = er(n, p, seed);
        let rc = find_cliques(&g, &GbscConfig::new(seed)).unwrap();
        prop_assert!(!rc.candidates().is_empty());
        for cand in rc.candidates() {
            prop_assert!(gbsc::clique::is_clique(rc.complement(), cand));
            let pairs = rc.aug().project(cand).unwrap();
            let mut col = Coloring::uncolored(n);
            for &(v, i) in &pairs {
                prop_assert!(col.color_of(v).is_none(), "vertex {} twice", v);
                col.set(v, i);
            }
            prop_assert!(coloring::is_valid(&g, &col));
        }
    }

    #[test]
    fn dimacs_survives_a_round_trip(
        n in 1usize..=20,
        p in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let g = er(n, p, seed);
        let back = read_dimacs(&write_dimacs(&g)).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        let (mut e1, mut e2): (Vec<_>, Vec<_>) = (g.edges().collect(), back.edges().collect());
        e1.sort();
        e2.sort();
        prop_assert_eq!(e1, e2);
    }
}

// The two independent max-clique oracles agree, so either may back the
// heavier suites.
#[test]
fn clique_oracles_agree_on_small_graphs() {
    for seed in 0..40u64 {
        let n = 2 + (seed as usize * 7) % 13;
        let p = 0.1 + 0.08 * (seed % 10) as f64;
        let g = er(n, p, 900 + seed);
        assert_eq!(
            common::max_clique_size(&g),
            common::max_clique_size_scan(&g),
            "oracles disagree on n={n} seed={seed}"
        );
    }
    assert_eq!(common::max_clique_size(&common::petersen()), 2);
    assert_eq!(
        common::max_clique_size(&common::complete_bipartite(4, 4)),
        2
    );
    assert_eq!(common::max_clique_size(&common::cycle(5)), 2);
}
