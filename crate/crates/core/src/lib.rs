//! Orderings with small weakly reachable sets and algorithms for uniform
//! quasi-wideness on sparse graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`], [`order`], [`degeneracy`]: graph representation, edge-list
//!   ingestion and the basic primitives.
//! - [`reach`]: weakly/strongly reachable sets of an order and an exact
//!   oracle for tiny graphs.
//! - [`wcol`]: ordering heuristics (simple, treedepth, min-degree, greedy,
//!   flat decompositions, dtf-augmentations) and local search.
//! - [`uqw`]: scattered-set algorithms (greedy independent sets, distance
//!   trees, weak-coloring based algorithms) with verification and scoring.
//! - [`lb`]: generator for the lower-bound instances.

pub mod deadline;
pub mod degeneracy;
pub mod error;
pub mod generators;
pub mod graph;
pub mod lb;
pub mod order;
pub mod reach;
pub mod uqw;
pub mod wcol;

pub use deadline::Deadline;
pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use order::Order;
