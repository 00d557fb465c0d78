//! Subset sampling from the matching-squared subgraph distribution.
//!
//! A threshold detector turns a Gaussian device programmed for a graph into a
//! distribution over vertex subsets with P(s) ∝ c^|s|·Perf(g[s])². Three
//! interchangeable engines cover different scales:
//!
//! - `Enumerate`: exact tabulation over all subsets (≤ 18 vertices), used as
//!   the ground-truth oracle,
//! - `Mcmc`: Metropolis chain over fixed-size subsets for production use,
//! - `Uniform`: size-matched uniform baseline for measuring the density bias.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{hafnian_with_limit, pm_count_compact, pm_counts_all, DEFAULT_HAFNIAN_LIMIT};
use crate::rng::{rng_from_seed, split_seed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Mode-count cap for exact enumeration (2^n table).
pub const ENUMERATION_LIMIT: usize = 18;

/// Largest subset size whose chain weights use exact matching counts; larger
/// slices fall back to a density surrogate (see `sample`).
pub const DEFAULT_EXACT_WEIGHT_LIMIT: usize = 20;

/// Density-surrogate inverse temperature for oversized subsets.
const SURROGATE_BETA: f64 = 1.0;

/// A threshold-detector outcome: which of the `modes` detectors clicked.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhotonPattern {
    modes: usize,
    subset: Vec<usize>,
}

impl PhotonPattern {
    /// Builds a pattern from the clicked subset; vertices may arrive in any
    /// order but must be in range and distinct.
    pub fn from_subset(modes: usize, mut subset: Vec<usize>) -> Result<Self> {
        subset.sort_unstable();
        for w in subset.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        if let Some(&v) = subset.last() {
            if v >= modes {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: modes,
                });
            }
        }
        Ok(PhotonPattern { modes, subset })
    }

    /// Number of detector modes (= host graph vertices).
    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Clicked vertices, ascending.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// Number of clicks.
    pub fn size(&self) -> usize {
        self.subset.len()
    }

    /// Dense 0/1 click vector.
    pub fn clicks(&self) -> Vec<u8> {
        let mut v = vec![0u8; self.modes];
        for &i in &self.subset {
            v[i] = 1;
        }
        v
    }
}

/// Sampling engine selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerMode {
    /// Exact i.i.d. draws from the tabulated distribution (small graphs).
    Enumerate,
    /// Metropolis chain over fixed-size subsets.
    Mcmc,
    /// Uniform size-n̄ subsets, no weighting.
    Uniform,
}

/// Configuration for `sample`.
///
/// `mean_photons` is the target subset size; the weighted engines round it
/// down to even (odd subsets carry zero weight), the uniform baseline keeps
/// it as given. `burn_in` defaults to 1000·(vertex count) and `thinning` to
/// 10·(subset size) when unset.
#[derive(Debug, Clone)]
pub struct SamplerConfig {
    pub mode: SamplerMode,
    pub n_samples: usize,
    pub mean_photons: usize,
    pub seed: u64,
    /// Chain steps discarded before recording (MCMC only).
    pub burn_in: Option<usize>,
    /// Chain steps between recorded samples (MCMC only).
    pub thinning: Option<usize>,
    /// Independent chains; samples are concatenated in chain order.
    pub chains: usize,
    /// Subset-size cap for exact matching-count weights.
    pub exact_weight_limit: usize,
}

impl SamplerConfig {
    pub fn new(mode: SamplerMode, n_samples: usize, mean_photons: usize, seed: u64) -> Self {
        SamplerConfig {
            mode,
            n_samples,
            mean_photons,
            seed,
            burn_in: None,
            thinning: None,
            chains: 1,
            exact_weight_limit: DEFAULT_EXACT_WEIGHT_LIMIT,
        }
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::InvalidSamplerConfig("n_samples must be ≥ 1".into()));
        }
        if self.mean_photons < 2 {
            return Err(Error::InvalidSamplerConfig(
                "mean_photons must be ≥ 2".into(),
            ));
        }
        if self.mean_photons > g.vertex_count() {
            return Err(Error::InvalidSamplerConfig(format!(
                "mean_photons {} exceeds vertex count {}",
                self.mean_photons,
                g.vertex_count()
            )));
        }
        if self.chains == 0 {
            return Err(Error::InvalidSamplerConfig("chains must be ≥ 1".into()));
        }
        if self.thinning == Some(0) {
            return Err(Error::InvalidSamplerConfig("thinning must be ≥ 1".into()));
        }
        if self.exact_weight_limit > 22 {
            return Err(Error::InvalidSamplerConfig(
                "exact_weight_limit must be ≤ 22".into(),
            ));
        }
        Ok(())
    }

    /// Subset size actually sampled: even-adjusted for the weighted engines.
    fn target_size(&self) -> usize {
        match self.mode {
            SamplerMode::Uniform => self.mean_photons,
            _ => self.mean_photons & !1,
        }
    }
}

/// Output of `sample`: the recorded patterns, plus a flag set when no
/// positive-weight subset of the requested size was reachable and the run
/// degraded to uniform draws (also logged as a warning).
#[derive(Debug, Clone)]
pub struct SampleRun {
    pub patterns: Vec<PhotonPattern>,
    pub fell_back_to_uniform: bool,
}

/// Weight of the click pattern `s`: c^|s| · Perf(g[s])², i.e. the scaled
/// squared hafnian of the adjacency submatrix on `s`.
pub fn pattern_weight(g: &Graph, s: &[usize], c: f64) -> Result<f64> {
    let n = g.vertex_count();
    let mut seen = Bits::new(n);
    for &v in s {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if seen.get(v) {
            return Err(Error::DuplicateVertex(v));
        }
        seen.set(v);
    }
    let t = s.len();
    let haf = if t <= 22 {
        let adj = compact_adjacency(g, s);
        let mut scratch = Vec::new();
        pm_count_compact(&adj, &mut scratch) as f64
    } else {
        let (sub, _) = g.induced_subgraph(s)?;
        hafnian_with_limit(&sub.adjacency_matrix(), DEFAULT_HAFNIAN_LIMIT)?
    };
    Ok(c.powi(t as i32) * haf * haf)
}

/// Relabels `s` to 0..|s| and gathers adjacency bitmasks.
fn compact_adjacency(g: &Graph, s: &[usize]) -> Vec<u32> {
    let t = s.len();
    let mut adj = vec![0u32; t];
    for a in 0..t {
        for b in (a + 1)..t {
            if g.has_edge(s[a], s[b]) {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
    }
    adj
}

/// Exact distribution over all positive-weight click patterns of `g` at
/// scaling `c`, ascending by subset; probabilities sum to 1 within 1e-12.
///
/// One subset-DP pass tabulates every induced matching count, so the cost is
/// O(2^n·n) despite the exponential support.
pub fn enumerate_distribution(g: &Graph, c: f64) -> Result<Vec<(PhotonPattern, f64)>> {
    let n = g.vertex_count();
    if n > ENUMERATION_LIMIT {
        return Err(Error::DimensionTooLarge {
            what: "distribution enumeration",
            got: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let ids: Vec<usize> = (0..n).collect();
    let adj = compact_adjacency(g, &ids);
    let mut counts = Vec::new();
    pm_counts_all(&adj, &mut counts);

    let mut entries: Vec<(u32, f64)> = Vec::new();
    let mut total = 0.0f64;
    let full: u32 = if n == 0 { 0 } else { (1 << n) - 1 };
    for mask in 0..=full {
        let size = mask.count_ones() as usize;
        if size % 2 == 1 {
            continue;
        }
        let pm = counts[mask as usize] as f64;
        if pm == 0.0 {
            continue;
        }
        let w = c.powi(size as i32) * pm * pm;
        if w > 0.0 {
            entries.push((mask, w));
            total += w;
        }
    }
    debug_assert!(total > 0.0, "empty pattern always has weight 1");
    let dist = entries
        .into_iter()
        .map(|(mask, w)| {
            let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            (PhotonPattern { modes: n, subset }, w / total)
        })
        .collect();
    Ok(dist)
}

/// `enumerate_distribution` restricted to patterns of exactly `size` clicks,
/// renormalized. Errors with `NoCandidates` when the slice carries no mass.
pub fn size_conditioned_distribution(
    g: &Graph,
    c: f64,
    size: usize,
) -> Result<Vec<(PhotonPattern, f64)>> {
    let mut slice: Vec<(PhotonPattern, f64)> = enumerate_distribution(g, c)?
        .into_iter()
        .filter(|(p, _)| p.size() == size)
        .collect();
    let total: f64 = slice.iter().map(|(_, w)| w).sum();
    if slice.is_empty() || total <= 0.0 {
        return Err(Error::NoCandidates);
    }
    for (_, w) in &mut slice {
        *w /= total;
    }
    Ok(slice)
}

/// Draws `cfg.n_samples` subsets of `g` according to `cfg.mode`; identical
/// inputs give identical output. See `SamplerConfig` for knob semantics.
///
/// The weighted engines condition on exactly `target_size` clicks. When that
/// slice carries no mass (e.g. an edgeless graph), the run is completed with
/// uniform draws instead and flagged. Chain weights use exact matching
/// counts up to `exact_weight_limit` clicks; beyond that the chain targets
/// exp(β·edges(s)), trading exactness for scale while keeping the density
/// bias the weighting exists for.
pub fn sample(g: &Graph, cfg: &SamplerConfig) -> Result<SampleRun> {
    cfg.validate(g)?;
    let nbar = cfg.target_size();
    match cfg.mode {
        SamplerMode::Uniform => {
            let mut rng = rng_from_seed(cfg.seed);
            let patterns = (0..cfg.n_samples)
                .map(|_| uniform_subset(g.vertex_count(), nbar, &mut rng))
                .collect();
            Ok(SampleRun {
                patterns,
                fell_back_to_uniform: false,
            })
        }
        SamplerMode::Enumerate => sample_enumerate(g, cfg, nbar),
        SamplerMode::Mcmc => sample_mcmc(g, cfg, nbar),
    }
}

fn uniform_subset(n: usize, size: usize, rng: &mut ChaCha8Rng) -> PhotonPattern {
    debug_assert!(size <= n);
    let mut ids: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = rng.gen_range(i..n);
        ids.swap(i, j);
    }
    let mut subset: Vec<usize> = ids[..size].to_vec();
    subset.sort_unstable();
    PhotonPattern { modes: n, subset }
}

fn sample_enumerate(g: &Graph, cfg: &SamplerConfig, nbar: usize) -> Result<SampleRun> {
    let mut rng = rng_from_seed(cfg.seed);
    let dist = match size_conditioned_distribution(g, 1.0, nbar) {
        Ok(d) => d,
        Err(Error::NoCandidates) => {
            log::warn!(
                "no positive-weight subset of size {nbar}; falling back to uniform sampling"
            );
            let patterns = (0..cfg.n_samples)
                .map(|_| uniform_subset(g.vertex_count(), nbar, &mut rng))
                .collect();
            return Ok(SampleRun {
                patterns,
                fell_back_to_uniform: true,
            });
        }
        Err(e) => return Err(e),
    };
    let mut cumulative = Vec::with_capacity(dist.len());
    let mut acc = 0.0;
    for (_, w) in &dist {
        acc += w;
        cumulative.push(acc);
    }
    let patterns = (0..cfg.n_samples)
        .map(|_| {
            let u = rng.gen::<f64>() * acc;
            let i = cumulative.partition_point(|&cw| cw < u);
            dist[i.min(dist.len() - 1)].0.clone()
        })
        .collect();
    Ok(SampleRun {
        patterns,
        fell_back_to_uniform: false,
    })
}

fn sample_mcmc(g: &Graph, cfg: &SamplerConfig, nbar: usize) -> Result<SampleRun> {
    let per_chain = {
        let base = cfg.n_samples / cfg.chains;
        let extra = cfg.n_samples % cfg.chains;
        (0..cfg.chains)
            .map(|i| base + usize::from(i < extra))
            .collect::<Vec<_>>()
    };
    let runs: Vec<(Vec<PhotonPattern>, bool)> = per_chain
        .into_par_iter()
        .enumerate()
        .filter(|(_, count)| *count > 0)
        .map(|(i, count)| run_chain(g, cfg, nbar, count, split_seed(cfg.seed, i as u64)))
        .collect();
    let fell_back = runs.iter().any(|(_, f)| *f);
    let patterns = runs.into_iter().flat_map(|(p, _)| p).collect();
    Ok(SampleRun {
        patterns,
        fell_back_to_uniform: fell_back,
    })
}

/// Chain state: subset of fixed size with incrementally tracked membership
/// and induced edge count.
struct ChainState {
    subset: Vec<usize>,
    member: Bits,
    edges: usize,
}

impl ChainState {
    fn new(g: &Graph, subset: Vec<usize>) -> Self {
        let mut member = Bits::new(g.vertex_count());
        for &v in &subset {
            member.set(v);
        }
        let edges = g.edges_within(&member);
        ChainState {
            subset,
            member,
            edges,
        }
    }

    /// Edge-count delta of swapping member `u` (at `pos`) for outsider `v`.
    fn swap_delta(&self, g: &Graph, pos: usize, v: usize) -> isize {
        let u = self.subset[pos];
        let du = g.adj_row(u).and_count(&self.member) as isize;
        let dv = g.adj_row(v).and_count(&self.member) as isize - isize::from(g.has_edge(u, v));
        dv - du
    }

    fn apply_swap(&mut self, pos: usize, v: usize, delta: isize) {
        let u = self.subset[pos];
        self.member.clear(u);
        self.member.set(v);
        self.subset[pos] = v;
        self.edges = (self.edges as isize + delta) as usize;
    }

    fn pattern(&self, modes: usize) -> PhotonPattern {
        let mut subset = self.subset.clone();
        subset.sort_unstable();
        PhotonPattern { modes, subset }
    }
}

/// Exact chain weight: squared matching count of the induced subgraph, via
/// subset DP with a cheap isolated-vertex rejection first. Only the ratio of
/// consecutive weights matters, so the c^|s| factor (constant on the fixed-
/// size slice) is dropped.
fn exact_weight(g: &Graph, subset: &[usize], scratch: &mut Vec<u64>) -> f64 {
    let adj = compact_adjacency(g, subset);
    if adj.contains(&0) {
        return 0.0;
    }
    let pm = pm_count_compact(&adj, scratch) as f64;
    pm * pm
}

fn run_chain(
    g: &Graph,
    cfg: &SamplerConfig,
    nbar: usize,
    count: usize,
    seed: u64,
) -> (Vec<PhotonPattern>, bool) {
    let n = g.vertex_count();
    let mut rng = rng_from_seed(seed);
    if nbar == n || nbar == 0 {
        // Single reachable state; the chain is constant.
        let state = ChainState::new(g, (0..nbar).collect());
        return (vec![state.pattern(n); count], false);
    }
    let exact = nbar <= cfg.exact_weight_limit;
    let burn_in = cfg.burn_in.unwrap_or(1000 * n);
    let thinning = cfg.thinning.unwrap_or(10 * nbar).max(1);

    let mut scratch = Vec::new();
    let mut state = ChainState::new(g, greedy_dense_subset(g, nbar));
    let mut weight = if exact {
        exact_weight(g, &state.subset, &mut scratch)
    } else {
        (SURROGATE_BETA * state.edges as f64).exp()
    };

    let mut step = |state: &mut ChainState, weight: &mut f64, rng: &mut ChaCha8Rng| {
        let pos = rng.gen_range(0..nbar);
        let mut v = rng.gen_range(0..n - nbar);
        // Map the outsider draw onto the complement of the subset: the
        // members are visited ascending, shifting the draw past each one.
        for m in state.member.iter_ones() {
            if v >= m {
                v += 1;
            } else {
                break;
            }
        }
        debug_assert!(!state.member.get(v));
        let delta = state.swap_delta(g, pos, v);
        if *weight == 0.0 {
            // Escape rule: drift toward denser subsets until the matching
            // count turns positive.
            if delta >= 0 {
                state.apply_swap(pos, v, delta);
                *weight = exact_weight(g, &state.subset, &mut scratch);
            }
            return;
        }
        if exact {
            let mut trial = state.subset.clone();
            trial[pos] = v;
            let w = exact_weight(g, &trial, &mut scratch);
            if w > 0.0 && (w >= *weight || rng.gen::<f64>() < w / *weight) {
                state.apply_swap(pos, v, delta);
                *weight = w;
            }
        } else {
            let ratio = (SURROGATE_BETA * delta as f64).exp();
            if ratio >= 1.0 || rng.gen::<f64>() < ratio {
                state.apply_swap(pos, v, delta);
                *weight = (SURROGATE_BETA * state.edges as f64).exp();
            }
        }
    };

    for _ in 0..burn_in {
        step(&mut state, &mut weight, &mut rng);
    }
    if weight == 0.0 {
        log::warn!(
            "chain weight still zero after {burn_in} burn-in steps; \
             falling back to uniform size-{nbar} sampling"
        );
        let patterns = (0..count)
            .map(|_| uniform_subset(n, nbar, &mut rng))
            .collect();
        return (patterns, true);
    }
    let mut patterns = Vec::with_capacity(count);
    for _ in 0..count {
        for _ in 0..thinning {
            step(&mut state, &mut weight, &mut rng);
        }
        patterns.push(state.pattern(n));
    }
    (patterns, false)
}

/// Deterministic dense starting subset: repeatedly add the vertex with the
/// most edges into the current set (ties: global degree, then smallest id).
fn greedy_dense_subset(g: &Graph, size: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut member = Bits::new(n);
    let mut subset = Vec::with_capacity(size);
    for _ in 0..size {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..n {
            if member.get(v) {
                continue;
            }
            let key = (g.adj_row(v).and_count(&member), g.degree(v));
            if best.is_none_or(|(a, b, _)| key > (a, b)) {
                best = Some((key.0, key.1, v));
            }
        }
        let (_, _, v) = best.expect("size ≤ n");
        member.set(v);
        subset.push(v);
    }
    subset
}

/// Mean induced-subgraph density under the weighted sampler vs under uniform
/// size-matched subsets, at the same sample budget; the gap measures how
/// strongly the weighting favors dense regions. `n_bar` is even-adjusted for
/// both engines so the comparison is size-for-size.
pub fn density_bias_report(
    g: &Graph,
    n_bar: usize,
    n_samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let nbar = n_bar & !1;
    let mcmc_cfg = SamplerConfig::new(SamplerMode::Mcmc, n_samples, nbar, split_seed(seed, 0));
    let uniform_cfg =
        SamplerConfig::new(SamplerMode::Uniform, n_samples, nbar, split_seed(seed, 1));
    let sampled = mean_density(g, &sample(g, &mcmc_cfg)?.patterns)?;
    let uniform = mean_density(g, &sample(g, &uniform_cfg)?.patterns)?;
    Ok((sampled, uniform))
}

fn mean_density(g: &Graph, patterns: &[PhotonPattern]) -> Result<f64> {
    let mut total = 0.0;
    for p in patterns {
        let (sub, _) = g.induced_subgraph(p.subset())?;
        total += sub.density()?;
    }
    Ok(total / patterns.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::erdos_renyi;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn star() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn pattern_weight_hand_values() {
        let g = k3();
        assert_eq!(pattern_weight(&g, &[], 0.5).unwrap(), 1.0);
        assert_eq!(pattern_weight(&g, &[0, 1], 0.5).unwrap(), 0.25);
        let s = star();
        assert_eq!(pattern_weight(&s, &[1, 2], 0.5).unwrap(), 0.0);
        let k4 = erdos_renyi(4, 1.0, 0).unwrap();
        assert_eq!(pattern_weight(&k4, &[0, 1, 2, 3], 1.0).unwrap(), 9.0);
    }

    #[test]
    fn pattern_weight_validates_subset() {
        let g = k3();
        assert!(pattern_weight(&g, &[0, 3], 1.0).is_err());
        assert!(pattern_weight(&g, &[1, 1], 1.0).is_err());
    }

    #[test]
    fn enumeration_normalizes_and_skips_zero_weight() {
        let g = star();
        let dist = enumerate_distribution(&g, 0.4).unwrap();
        let total: f64 = dist.iter().map(|(_, w)| w).sum();
        assert!((total - 1.0).abs() <= 1e-12);
        for (p, w) in &dist {
            assert!(p.size() % 2 == 0);
            assert!(*w > 0.0);
            assert!(pattern_weight(&g, p.subset(), 0.4).unwrap() > 0.0);
        }
        // Leaf pairs are non-adjacent and must be absent.
        assert!(!dist.iter().any(|(p, _)| p.subset() == [1, 2]));
    }

    #[test]
    fn conditioned_triangle_is_uniform_over_edges() {
        let dist = size_conditioned_distribution(&k3(), 0.7, 2).unwrap();
        assert_eq!(dist.len(), 3);
        for (p, w) in &dist {
            assert_eq!(p.size(), 2);
            assert!((w - 1.0 / 3.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn edgeless_distribution_is_all_empty_pattern() {
        let dist = enumerate_distribution(&Graph::empty(5), 0.5).unwrap();
        assert_eq!(dist.len(), 1);
        assert_eq!(dist[0].0.size(), 0);
        assert_eq!(dist[0].1, 1.0);
    }

    #[test]
    fn conditioning_removes_scaling_dependence() {
        let g = erdos_renyi(10, 0.5, 7).unwrap();
        let a = size_conditioned_distribution(&g, 0.3, 4).unwrap();
        let b = size_conditioned_distribution(&g, 0.7, 4).unwrap();
        assert_eq!(a.len(), b.len());
        for ((pa, wa), (pb, wb)) in a.iter().zip(&b) {
            assert_eq!(pa, pb);
            assert!((wa - wb).abs() <= 1e-12);
        }
    }

    #[test]
    fn enumeration_cap_enforced() {
        let g = Graph::empty(19);
        assert!(enumerate_distribution(&g, 1.0).is_err());
    }

    #[test]
    fn config_validation() {
        let g = k3();
        for bad in [
            SamplerConfig::new(SamplerMode::Uniform, 0, 2, 1),
            SamplerConfig::new(SamplerMode::Uniform, 5, 1, 1),
            SamplerConfig::new(SamplerMode::Uniform, 5, 4, 1),
        ] {
            assert!(sample(&g, &bad).is_err());
        }
        let mut zero_chains = SamplerConfig::new(SamplerMode::Mcmc, 5, 2, 1);
        zero_chains.chains = 0;
        assert!(sample(&g, &zero_chains).is_err());
    }

    #[test]
    fn uniform_full_size_is_identity() {
        // Odd vertex count on purpose: the uniform engine keeps n̄ as given.
        let g = Graph::empty(5);
        let cfg = SamplerConfig::new(SamplerMode::Uniform, 10, 5, 3);
        let run = sample(&g, &cfg).unwrap();
        assert!(run.patterns.iter().all(|p| p.subset() == [0, 1, 2, 3, 4]));
    }

    #[test]
    fn weighted_engines_even_adjust() {
        let g = erdos_renyi(8, 0.9, 2).unwrap();
        for mode in [SamplerMode::Enumerate, SamplerMode::Mcmc] {
            let cfg = SamplerConfig::new(mode, 20, 5, 9);
            let run = sample(&g, &cfg).unwrap();
            assert!(run.patterns.iter().all(|p| p.size() == 4));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = erdos_renyi(10, 0.5, 11).unwrap();
        for mode in [
            SamplerMode::Enumerate,
            SamplerMode::Mcmc,
            SamplerMode::Uniform,
        ] {
            let mut cfg = SamplerConfig::new(mode, 25, 4, 42);
            cfg.chains = 3;
            let a = sample(&g, &cfg).unwrap();
            let b = sample(&g, &cfg).unwrap();
            assert_eq!(a.patterns, b.patterns);
            assert_eq!(a.fell_back_to_uniform, b.fell_back_to_uniform);
        }
    }

    #[test]
    fn triangle_frequencies_match_conditioned_law() {
        let cfg = SamplerConfig::new(SamplerMode::Enumerate, 20_000, 2, 5);
        let run = sample(&k3(), &cfg).unwrap();
        assert!(!run.fell_back_to_uniform);
        let mut counts = [0usize; 3];
        for p in &run.patterns {
            let idx = match p.subset() {
                [0, 1] => 0,
                [0, 2] => 1,
                [1, 2] => 2,
                other => panic!("unexpected pattern {other:?}"),
            };
            counts[idx] += 1;
        }
        for c in counts {
            let freq = c as f64 / 20_000.0;
            assert!((freq - 1.0 / 3.0).abs() <= 0.02, "freq {freq}");
        }
    }

    #[test]
    fn mcmc_stays_on_positive_weight_patterns() {
        let g = erdos_renyi(12, 0.6, 13).unwrap();
        let cfg = SamplerConfig::new(SamplerMode::Mcmc, 200, 4, 17);
        let run = sample(&g, &cfg).unwrap();
        assert!(!run.fell_back_to_uniform);
        for p in &run.patterns {
            assert!(pattern_weight(&g, p.subset(), 1.0).unwrap() > 0.0);
        }
    }

    #[test]
    fn zero_weight_graph_falls_back_to_uniform() {
        let g = Graph::empty(8);
        for mode in [SamplerMode::Enumerate, SamplerMode::Mcmc] {
            let cfg = SamplerConfig::new(mode, 30, 4, 23);
            let run = sample(&g, &cfg).unwrap();
            assert!(run.fell_back_to_uniform);
            assert_eq!(run.patterns.len(), 30);
            assert!(run.patterns.iter().all(|p| p.size() == 4));
        }
    }

    #[test]
    fn chain_splitting_preserves_sample_count() {
        let g = erdos_renyi(10, 0.6, 3).unwrap();
        let mut cfg = SamplerConfig::new(SamplerMode::Mcmc, 17, 4, 1);
        cfg.chains = 5;
        let run = sample(&g, &cfg).unwrap();
        assert_eq!(run.patterns.len(), 17);
    }

    #[test]
    fn complete_graph_density_bias_is_saturated() {
        let g = erdos_renyi(5, 1.0, 0).unwrap();
        let (sampled, uniform) = density_bias_report(&g, 4, 50, 7).unwrap();
        assert_eq!(sampled, 1.0);
        assert_eq!(uniform, 1.0);
    }

    #[test]
    fn surrogate_tier_still_samples() {
        let g = erdos_renyi(16, 0.5, 4).unwrap();
        let mut cfg = SamplerConfig::new(SamplerMode::Mcmc, 40, 6, 19);
        cfg.exact_weight_limit = 4; // force the surrogate path
        cfg.burn_in = Some(500);
        cfg.thinning = Some(5);
        let run = sample(&g, &cfg).unwrap();
        assert_eq!(run.patterns.len(), 40);
        assert!(run.patterns.iter().all(|p| p.size() == 6));
    }
}
