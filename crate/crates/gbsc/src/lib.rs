//! Graph coloring driven by Gaussian boson sampling.
//!
//! The crate builds up from graph primitives and numerical kernels (hafnian,
//! Takagi factorization, squeezing solvers) to a subgraph sampler, clique
//! search, coloring heuristics, and the full sampling-based coloring loop,
//! plus a benchmark harness comparing it against classical baselines.

pub mod bench;
pub mod clique;
pub mod coloring;
pub mod error;
pub mod exact;
pub mod graph;
pub mod math;
pub mod pipeline;
pub mod sampler;

mod bits;
mod rng;

pub use error::{Error, Result};
pub use rng::split_seed;
