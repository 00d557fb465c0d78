//! Random instance generators: Erdős–Rényi graphs and grouped-interval
//! scheduling instances (intervals that conflict when they overlap in time or
//! share an exclusive group).

use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// G(n, p) with every candidate edge drawn independently.
///
/// Candidate pairs are visited in lexicographic order, so a fixed
/// `(n, p, seed)` reproduces the same graph bit-exactly.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = rng_from_seed(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                g.insert_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// A set of half-open time intervals partitioned into exclusive groups.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupIntervalInstance {
    intervals: Vec<(f64, f64)>,
    groups: Vec<usize>,
    k_max: usize,
}

impl GroupIntervalInstance {
    /// Validates that every interval is nonempty, groups are within bounds,
    /// and no group exceeds `k_max` members.
    pub fn new(intervals: Vec<(f64, f64)>, groups: Vec<usize>, k_max: usize) -> Result<Self> {
        if k_max == 0 {
            return Err(Error::InvalidConfig("max group size must be >= 1".into()));
        }
        if intervals.len() != groups.len() {
            return Err(Error::InvalidConfig(format!(
                "{} intervals but {} group assignments",
                intervals.len(),
                groups.len()
            )));
        }
        for (i, &(s, e)) in intervals.iter().enumerate() {
            if !s.is_finite() || !e.is_finite() {
                return Err(Error::NonFinite("interval bounds"));
            }
            if s >= e {
                return Err(Error::InvalidConfig(format!(
                    "interval {i} is empty: [{s}, {e})"
                )));
            }
        }
        let mut sizes = std::collections::HashMap::new();
        for &g in &groups {
            let c = sizes.entry(g).or_insert(0usize);
            *c += 1;
            if *c > k_max {
                return Err(Error::InvalidConfig(format!(
                    "group {g} has more than {k_max} members"
                )));
            }
        }
        Ok(GroupIntervalInstance {
            intervals,
            groups,
            k_max,
        })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn groups(&self) -> &[usize] {
        &self.groups
    }

    pub fn max_group_size(&self) -> usize {
        self.k_max
    }
}

/// Conflict graph of an instance: one vertex per interval, an edge whenever
/// two intervals overlap in time (half-open: touching endpoints are
/// compatible) or belong to the same group.
pub fn group_interval_graph(inst: &GroupIntervalInstance) -> Graph {
    let n = inst.len();
    let mut g = Graph::empty(n);
    for i in 0..n {
        let (si, ei) = inst.intervals[i];
        for j in (i + 1)..n {
            let (sj, ej) = inst.intervals[j];
            let overlap = si < ej && sj < ei;
            if overlap || inst.groups[i] == inst.groups[j] {
                g.insert_edge(i, j)
                    .expect("pairs are distinct and in range");
            }
        }
    }
    g
}

/// Random instance: durations uniform in [1, max_duration], starts uniform in
/// [0, horizon − duration), groups filled sequentially with sizes uniform in
/// {1..k_max}. Deterministic per seed.
pub fn random_group_interval_instance(
    n_intervals: usize,
    k_max: usize,
    horizon: f64,
    max_duration: f64,
    seed: u64,
) -> Result<GroupIntervalInstance> {
    if k_max == 0 {
        return Err(Error::InvalidConfig("max group size must be >= 1".into()));
    }
    if !(horizon.is_finite() && max_duration.is_finite()) {
        return Err(Error::NonFinite("interval generator parameters"));
    }
    if max_duration < 1.0 || horizon < max_duration {
        return Err(Error::InvalidConfig(format!(
            "need horizon >= max_duration >= 1, got horizon {horizon}, max_duration {max_duration}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut intervals = Vec::with_capacity(n_intervals);
    for _ in 0..n_intervals {
        let d = rng.gen_range(1.0..=max_duration);
        let start = if horizon > d {
            rng.gen_range(0.0..horizon - d)
        } else {
            0.0
        };
        intervals.push((start, start + d));
    }
    let mut groups = Vec::with_capacity(n_intervals);
    let mut group = 0usize;
    while groups.len() < n_intervals {
        let size = rng.gen_range(1..=k_max);
        for _ in 0..size {
            if groups.len() == n_intervals {
                break;
            }
            groups.push(group);
        }
        group += 1;
    }
    GroupIntervalInstance::new(intervals, groups, k_max)
}
