//! Certified stability bounds for `K_{p+1}`-free graphs.
//!
//! Given a graph `G` on `n` vertices with no `K_{p+1}` and deficiency
//! `t = e(T_{n,p}) − e(G)`, degree majorization ([`partitioner`]) splits the
//! vertices into at most `p` parts with at most `t` edges inside parts. Completing
//! that partition ([`stability`]) gives a complete `p`-partite graph within edit
//! distance `3t` of `G`. Every bound is checked in exact integer arithmetic, and
//! [`oracle`] provides exhaustive optima to compare against on small graphs.

pub mod edgelist;
pub mod error;
pub mod generators;
pub mod graph;
pub mod guards;
pub mod homomorphism;
pub mod oracle;
pub mod partitioner;
pub mod stability;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{Graph, Partition, VertexSet};
pub use guards::Guards;
