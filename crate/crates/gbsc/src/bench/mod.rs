//! Benchmark harness: instance generation, a bounded-parallel runner with
//! exact baselines, and excess-color / win-draw-loss aggregation tables.

mod config;
mod runner;
mod tables;

pub use config::{parse_config, ExperimentConfig, InstanceSource};
pub use runner::{
    generate_suite, parse_records, record_row, records_header, resolve_workers, run_suite,
    solve_instance,
};
pub use tables::{
    excess_csv, excess_markdown, excess_table, wdl_csv, wdl_markdown, wdl_table, ExcessRow,
    ExcessTable, RowKind, WdlCell, WdlRow, WdlTable,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A coloring method under benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Dsatur,
    Rlf,
    Sli,
    Gbsc,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Dsatur, Method::Rlf, Method::Sli, Method::Gbsc];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Dsatur => "dsatur",
            Method::Rlf => "rlf",
            Method::Sli => "sli",
            Method::Gbsc => "gbsc",
        }
    }

    pub fn parse(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown method \"{s}\"")))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One benchmark graph, ready to solve.
#[derive(Debug, Clone)]
pub struct BenchInstance {
    /// Stable, sortable identifier; resume keys off it.
    pub id: String,
    /// Aggregation group ("group1".. for edge-probability bands, "q1".. for
    /// density quartiles).
    pub group: String,
    pub n: usize,
    /// Drawn edge probability, or realized density for interval instances.
    pub param: f64,
    /// Per-instance seed, split from the master seed.
    pub seed: u64,
    pub graph: Graph,
}

/// Outcome of one method on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodResult {
    pub method: Method,
    pub palette: usize,
    /// Palette minus exact chromatic number; absent when the exact solve
    /// timed out (no trustworthy baseline).
    pub excess: Option<i64>,
    /// Wall time, informational only; excluded from determinism claims.
    pub millis: u64,
}

/// One solved instance: the exact baseline plus every method's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub id: String,
    pub group: String,
    pub n: usize,
    pub param: f64,
    pub seed: u64,
    /// Exact chromatic number, or the best-known upper bound when
    /// `timed_out` is set.
    pub chi: usize,
    pub timed_out: bool,
    /// Parallel to the configured method list.
    pub results: Vec<MethodResult>,
}
