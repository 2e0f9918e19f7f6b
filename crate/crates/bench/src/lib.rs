//! Experiment harness for the ordering and uniform quasi-wideness
//! algorithms of `gcol-core`.

pub mod dataset;
pub mod pool;
pub mod stats;
pub mod uqw_bench;
pub mod wcol_bench;

pub use dataset::{load_inputs, Dataset, GroupLabel};
