//! Text formats: DIMACS `.col` graphs and line-based interval instances.

use super::{Graph, GroupIntervalInstance};
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a DIMACS `.col` graph.
///
/// Accepts `c` comment lines, exactly one `p edge <n> <m>` header, and `m`
/// edge lines `e <u> <v>` with 1-based endpoints. Self-loops, duplicate
/// edges (in either orientation), and out-of-range ids are rejected.
pub fn read_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(parse_err(lineno, "second problem line"));
                }
                if parts.next() != Some("edge") {
                    return Err(parse_err(lineno, "expected 'p edge <n> <m>'"));
                }
                let n: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "bad vertex count"))?;
                let m: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "bad edge count"))?;
                if parts.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens on problem line"));
                }
                graph = Some(Graph::empty(n));
                declared_edges = m;
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(lineno, "edge before problem line"))?;
                let u: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "bad edge endpoint"))?;
                let v: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "bad edge endpoint"))?;
                if parts.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens on edge line"));
                }
                if u == 0 || v == 0 {
                    return Err(parse_err(lineno, "vertex ids are 1-based"));
                }
                if u > g.vertex_count() || v > g.vertex_count() {
                    return Err(parse_err(lineno, "vertex id exceeds declared count"));
                }
                g.insert_edge(u - 1, v - 1)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
            }
            Some(other) => {
                return Err(parse_err(lineno, format!("unknown line type '{other}'")));
            }
            None => unreachable!("empty lines are skipped"),
        }
    }
    let g = graph.ok_or_else(|| parse_err(0, "missing problem line"))?;
    if g.edge_count() != declared_edges {
        return Err(parse_err(
            0,
            format!(
                "header declares {} edges but {} were given",
                declared_edges,
                g.edge_count()
            ),
        ));
    }
    Ok(g)
}

/// Serializes a graph in DIMACS `.col` format with edges in lexicographic
/// order; `read_dimacs(write_dimacs(g)) == g`.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.vertex_count(), g.edge_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses interval instances: one `interval <id> <start> <end> <group>` line
/// per interval, ids 0-based and unique, `#` comments allowed. The max group
/// size is inferred as the largest group that occurs.
pub fn read_intervals(text: &str) -> Result<GroupIntervalInstance> {
    let mut rows: Vec<(usize, f64, f64, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        if parts.next() != Some("interval") {
            return Err(parse_err(
                lineno,
                "expected 'interval <id> <start> <end> <group>'",
            ));
        }
        let id: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad interval id"))?;
        let start: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad start time"))?;
        let end: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad end time"))?;
        let group: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad group id"))?;
        if parts.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens"));
        }
        rows.push((id, start, end, group));
    }
    let n = rows.len();
    let mut intervals = vec![None; n];
    let mut groups = vec![0usize; n];
    for (id, start, end, group) in rows {
        if id >= n {
            return Err(parse_err(
                0,
                format!("interval id {id} out of range 0..{n}"),
            ));
        }
        if intervals[id].is_some() {
            return Err(parse_err(0, format!("duplicate interval id {id}")));
        }
        intervals[id] = Some((start, end));
        groups[id] = group;
    }
    let intervals: Vec<(f64, f64)> = intervals.into_iter().map(|x| x.unwrap()).collect();
    let mut sizes = std::collections::HashMap::new();
    for &g in &groups {
        *sizes.entry(g).or_insert(0usize) += 1;
    }
    let k_max = sizes.values().copied().max().unwrap_or(1).max(1);
    GroupIntervalInstance::new(intervals, groups, k_max)
}

/// Serializes an instance; inverse of `read_intervals` up to the inferred
/// max group size.
pub fn write_intervals(inst: &GroupIntervalInstance) -> String {
    let mut out = String::new();
    for (id, (&(s, e), &g)) in inst.intervals().iter().zip(inst.groups()).enumerate() {
        out.push_str(&format!("interval {id} {s} {e} {g}\n"));
    }
    out
}
