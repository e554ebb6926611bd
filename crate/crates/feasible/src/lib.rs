//! Overlap graphs `Ov(k)`, their simple cycles, the cycle polytope `P_k` in
//! exact rational arithmetic, and distance/membership queries.

mod error;
pub mod graph;
pub mod lp;
pub mod polytope;

pub use error::FeasibleError;
pub use graph::{build_overlap_graph, build_overlap_graph_capped, pattern_rank, simple_cycles, simple_cycles_dfs, Edge, OverlapGraph, MAX_K};
pub use lp::{solve, LpOutcome, Q};
pub use polytope::{cocc_vector, cycle_vertex, polytope_dimension, rank, CoccVector, CyclePolytope, Membership, DEFAULT_CYCLE_CEILING};
