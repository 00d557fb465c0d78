//! The sampling-driven coloring loop.
//!
//! Each round reduces coloring on the residual graph to clique finding: the
//! residual graph is augmented with one copy of every vertex per available
//! color, the augmentation is complemented, and subgraph samples drawn from
//! the complement are hardened into cliques. A clique there projects to a
//! valid partial coloring (same-copy members are never adjacent, and no
//! vertex appears in two copies), so the best clique's projection is
//! committed, the colored vertices leave the residual graph, and the loop
//! repeats until no conflicting pair remains.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::clique::{search, shrink};
use crate::coloring::{dsatur, is_valid, Coloring};
use crate::error::{Error, Result};
use crate::graph::{augment, AugmentedGraph, Graph};
use crate::math::hoffman_bound;
use crate::rng::split_seed;
use crate::sampler::{sample, SamplerConfig, SamplerMode};

/// Tuning for the coloring loop.
///
/// `sampler` is a template: its engine, chain count, and weight-tier cap are
/// honored per round, while the sample count, target subset size, and seed
/// are overridden from the residual graph. `burn_in`/`thinning` are likewise
/// overridden with residual-sized budgets unless the template pins them.
#[derive(Debug, Clone)]
pub struct GbscConfig {
    pub sampler: SamplerConfig,
    /// Samples drawn per round, as a multiple of the residual size (≥ 1).
    pub samples_per_round: usize,
    /// Clique-search iteration budget; `None` means the residual size.
    pub search_iterations: Option<usize>,
    /// Consecutive zero-progress rounds tolerated before one vertex is
    /// colored greedily (≥ 1).
    pub stall_rounds: usize,
    pub seed: u64,
}

impl GbscConfig {
    pub fn new(seed: u64) -> Self {
        GbscConfig {
            // Counts and targets in the template are placeholders; every
            // round replaces them with residual-derived values.
            sampler: SamplerConfig::new(SamplerMode::Mcmc, 1, 2, seed),
            samples_per_round: 6,
            search_iterations: None,
            stall_rounds: 3,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples_per_round == 0 {
            return Err(Error::InvalidConfig(
                "samples_per_round must be at least 1".into(),
            ));
        }
        if self.stall_rounds == 0 {
            return Err(Error::InvalidConfig(
                "stall_rounds must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// One round of the coloring loop, for diagnostics and the CLI trace output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrace {
    /// Round index, starting at 0.
    pub round: usize,
    /// Colors made available this round (copies per residual vertex).
    pub k: usize,
    /// Residual graph size when the round started; strictly decreasing.
    pub residual: usize,
    /// Cliques produced by sampling this round.
    pub candidates: usize,
    /// Vertices of the original graph colored this round, ascending.
    pub chosen: Vec<usize>,
    /// Fresh color indices introduced this round.
    pub colors_consumed: usize,
}

/// The cliques found in one sampling round, together with the graphs they
/// live in: the augmentation of the residual graph and its complement (the
/// host of every candidate).
#[derive(Debug, Clone)]
pub struct RoundCliques {
    aug: AugmentedGraph,
    complement: Graph,
    candidates: Vec<Vec<usize>>,
}

impl RoundCliques {
    pub fn aug(&self) -> &AugmentedGraph {
        &self.aug
    }

    /// Complement of the augmented graph; every candidate is a clique here.
    pub fn complement(&self) -> &Graph {
        &self.complement
    }

    /// Candidate cliques as sorted vertex lists; duplicates allowed.
    pub fn candidates(&self) -> &[Vec<usize>] {
        &self.candidates
    }
}

/// Colors made available for a residual graph: the spectral lower bound on
/// its chromatic number, rounded up (float slack shaved first), at least 1.
pub fn round_k(h: &Graph) -> usize {
    ((hoffman_bound(h) - 1e-6).ceil() as usize).max(1)
}

/// Samples cliques for one round.
///
/// Builds the k-copy augmentation of `h` with `k = round_k(h)`, complements
/// it, draws `samples_per_round·|h|` subgraph samples from the complement
/// conditioned on |h| clicks (the weighted engines round odd targets down),
/// hardens every sample by peeling it to a clique and then growing and
/// swapping for `|h|` iterations (unless the config pins the budget), and
/// returns all resulting cliques. Candidate hardening runs in parallel with
/// per-candidate seeds, so results are deterministic in `cfg.seed`.
pub fn find_cliques(h: &Graph, cfg: &GbscConfig) -> Result<RoundCliques> {
    cfg.validate()?;
    let n = h.vertex_count();
    if n == 0 {
        return Err(Error::InvalidConfig(
            "cannot sample cliques for an empty residual graph".into(),
        ));
    }
    let k = round_k(h);
    let aug = augment(h, k)?;
    let complement = aug.graph().complement();
    if n == 1 {
        // A single residual vertex forces k = 1 and a one-vertex arena; the
        // sampler has nothing to decide.
        return Ok(RoundCliques {
            aug,
            complement,
            candidates: vec![vec![0]],
        });
    }

    let mut scfg = cfg.sampler.clone();
    scfg.n_samples = cfg.samples_per_round * n;
    scfg.mean_photons = n;
    scfg.seed = split_seed(cfg.seed, 0);
    // Residual-sized chain budgets: the defaults scale with the arena (n·k
    // modes), which is far more mixing than a single round needs.
    if scfg.burn_in.is_none() {
        scfg.burn_in = Some(30 * n);
    }
    if scfg.thinning.is_none() {
        scfg.thinning = Some(2);
    }
    let run = sample(&complement, &scfg)?;

    let iterations = cfg.search_iterations.unwrap_or(n);
    let candidates = run
        .patterns
        .par_iter()
        .enumerate()
        .map(|(i, pattern)| {
            let cand_seed = split_seed(cfg.seed, 1 + i as u64);
            let start = shrink(&complement, pattern.subset(), split_seed(cand_seed, 0));
            let clique = search(
                &complement,
                start.vertices(),
                iterations,
                split_seed(cand_seed, 1),
            )?;
            Ok(clique.vertices().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RoundCliques {
        aug,
        complement,
        candidates,
    })
}

/// Picks the most useful candidate by lexicographic key.
///
/// For each candidate C the key is (size of C, colors used by C, palette a
/// saturation coloring needs on the residual graph minus C's vertices, edge
/// density of that remainder): size is maximized, everything after it
/// minimized. Ties after all four keys go to the earliest candidate. The
/// remainder keys are 0 for an empty remainder, and density is 0 when the
/// remainder has at most one vertex.
pub fn best_clique<'a>(
    h: &Graph,
    candidates: &'a [Vec<usize>],
    aug: &AugmentedGraph,
) -> Result<&'a [usize]> {
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }
    let keys = candidates
        .par_iter()
        .map(|c| candidate_key(h, c, aug))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for i in 1..keys.len() {
        if key_order(&keys[i], &keys[best]) == Ordering::Greater {
            best = i;
        }
    }
    Ok(&candidates[best])
}

/// (size, colors used, remainder palette, remainder density).
fn candidate_key(
    h: &Graph,
    candidate: &[usize],
    aug: &AugmentedGraph,
) -> Result<(usize, usize, usize, f64)> {
    debug_assert!(
        candidate
            .iter()
            .enumerate()
            .all(|(i, &u)| candidate[i + 1..]
                .iter()
                .all(|&v| !aug.graph().has_edge(u, v))),
        "candidate is not independent in the augmented graph"
    );
    let pairs = aug.project(candidate)?;
    let mut copies: Vec<usize> = pairs.iter().map(|&(_, i)| i).collect();
    copies.sort_unstable();
    copies.dedup();

    let mut removed = vec![false; h.vertex_count()];
    for &(v, _) in &pairs {
        removed[v] = true;
    }
    let remaining: Vec<usize> = (0..h.vertex_count()).filter(|&v| !removed[v]).collect();
    let (palette, density) = if remaining.is_empty() {
        (0, 0.0)
    } else {
        let (rest, _) = h.induced_subgraph(&remaining)?;
        let palette = dsatur(&rest).palette_size();
        let density = if rest.vertex_count() <= 1 {
            0.0
        } else {
            rest.density()?
        };
        (palette, density)
    };
    Ok((candidate.len(), copies.len(), palette, density))
}

/// Greater = better: larger size, then fewer colors, smaller remainder
/// palette, sparser remainder.
fn key_order(a: &(usize, usize, usize, f64), b: &(usize, usize, usize, f64)) -> Ordering {
    a.0.cmp(&b.0)
        .then(b.1.cmp(&a.1))
        .then(b.2.cmp(&a.2))
        .then(b.3.total_cmp(&a.3))
}

/// Colors `g` by repeated clique sampling.
///
/// Every vertex starts in a placeholder class indexed `|V|`. While some edge
/// joins two equal-colored vertices (initially all of them), one round runs:
/// sample cliques on the residual graph, pick the best, and commit its
/// projection, giving each distinct copy index a fresh color (prior rounds'
/// colors are never reused, so rounds cannot conflict with each other).
/// Colored vertices leave the residual graph. Vertices still in the
/// placeholder class at exit form an independent set and keep the
/// placeholder index as one shared color.
///
/// Each committed projection is asserted to be a valid partial coloring of
/// the residual graph. Every round colors at least one vertex because
/// hardened candidates are maximal and nonempty; should sampling ever yield
/// zero progress for `stall_rounds` consecutive rounds anyway, one vertex is
/// colored by the saturation rule and the loop continues, so termination
/// within |V| productive rounds is unconditional.
///
/// Errors only on invalid configuration; the loop itself cannot fail.
pub fn gbsc_color(g: &Graph, cfg: &GbscConfig) -> Result<(Coloring, Vec<RoundTrace>)> {
    cfg.validate()?;
    let n = g.vertex_count();
    let placeholder = n;
    let mut colors = vec![placeholder; n];
    let mut offset = 0usize;
    let mut traces: Vec<RoundTrace> = Vec::new();
    let mut stalled = 0usize;

    while let Some(_conflict) = monochromatic_edge(g, &colors) {
        let round = traces.len();
        let residual: Vec<usize> = (0..n).filter(|&v| colors[v] == placeholder).collect();
        let (h, to_g) = g.induced_subgraph(&residual)?;

        let mut round_cfg = cfg.clone();
        round_cfg.seed = split_seed(cfg.seed, round as u64);
        let found = find_cliques(&h, &round_cfg)?;
        let winner = best_clique(&h, found.candidates(), found.aug())?;
        let pairs = found.aug().project(winner)?;
        assert!(
            projects_to_partial_coloring(&h, &pairs),
            "chosen clique must project to a valid partial coloring"
        );

        // Dense remap: the j-th smallest copy index in use becomes color
        // offset + j, so a round consumes exactly its distinct-color count
        // and color ranges never collide across rounds.
        let mut ranks: Vec<usize> = pairs.iter().map(|&(_, i)| i).collect();
        ranks.sort_unstable();
        ranks.dedup();
        let mut chosen = Vec::with_capacity(pairs.len());
        for &(v, copy) in &pairs {
            let rank = ranks.binary_search(&copy).expect("rank of its own copy");
            let gv = to_g[v];
            debug_assert_eq!(colors[gv], placeholder, "vertex colored twice");
            colors[gv] = offset + rank;
            chosen.push(gv);
        }
        chosen.sort_unstable();
        let mut consumed = ranks.len();
        offset += consumed;

        if chosen.is_empty() {
            stalled += 1;
        } else {
            stalled = 0;
        }
        if stalled >= cfg.stall_rounds {
            let (v, c) = stall_fallback(g, &colors, placeholder);
            if c == offset {
                offset += 1;
                consumed += 1;
            }
            colors[v] = c;
            chosen.push(v);
            stalled = 0;
        }

        traces.push(RoundTrace {
            round,
            k: found.aug().k(),
            residual: residual.len(),
            candidates: found.candidates().len(),
            chosen,
            colors_consumed: consumed,
        });
    }

    let coloring = Coloring::from_total(colors);
    debug_assert!(is_valid(g, &coloring));
    Ok((coloring, traces))
}

/// First edge whose endpoints currently share a class, if any.
fn monochromatic_edge(g: &Graph, colors: &[usize]) -> Option<(usize, usize)> {
    g.edges().find(|&(u, v)| colors[u] == colors[v])
}

/// Projection soundness: no vertex claimed twice, and no two same-copy
/// members adjacent in the residual graph.
fn projects_to_partial_coloring(h: &Graph, pairs: &[(usize, usize)]) -> bool {
    let mut col = Coloring::uncolored(h.vertex_count());
    for &(v, copy) in pairs {
        if col.color_of(v).is_some() {
            return false;
        }
        col.set(v, copy);
    }
    is_valid(h, &col)
}

/// Picks one uncolored vertex by the saturation rule (most distinct real
/// colors in its neighborhood, then most uncolored neighbors, then smallest
/// id) and the smallest color no neighbor holds. Placeholder entries count
/// as uncolored throughout.
fn stall_fallback(g: &Graph, colors: &[usize], placeholder: usize) -> (usize, usize) {
    let mut best: Option<(usize, usize, usize)> = None;
    for v in 0..g.vertex_count() {
        if colors[v] != placeholder {
            continue;
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut uncolored = 0usize;
        for u in g.neighbors(v) {
            if colors[u] == placeholder {
                uncolored += 1;
            } else {
                seen.insert(colors[u]);
            }
        }
        let key = (seen.len(), uncolored);
        if best.is_none_or(|(s, d, _)| key > (s, d)) {
            best = Some((key.0, key.1, v));
        }
    }
    let (_, _, v) = best.expect("a stalled round leaves uncolored vertices");
    let neighbor_colors: std::collections::BTreeSet<usize> = g
        .neighbors(v)
        .filter(|&u| colors[u] != placeholder)
        .map(|u| colors[u])
        .collect();
    let c = (0..).find(|c| !neighbor_colors.contains(c)).unwrap();
    (v, c)
}
