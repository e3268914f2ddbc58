//! Exact modularity for small and very dense graphs.
//!
//! The crate scores vertex partitions with exact rationals, decides whether a
//! graph has positive modularity by scanning bipartitions, searches for the
//! fewest edge edits that make modularity positive, builds explicit witness
//! partitions for complete and complete multipartite graphs, and runs seeded
//! experiments on random graphs whose complement has average degree near one.
//!
//! Scores are generic over the integer type behind [`num_rational::Ratio`].
//! The aliases below fix the common choices.

pub mod dense;
pub mod edit;
mod error;
pub mod graph;
pub mod modularity;
pub mod scalar;

pub use error::{Error, ParseError, Result};
pub use graph::{Bipartition, Edit, EditKind, Graph, PartitionStats, VertexSet};
pub use modularity::{
    exact_modularity, has_positive_modularity, modularity_score, near_complete_upper_bound,
    p_value, ExactModularity, PositivityWitness, ScoreBreakdown, Verdict,
};

/// Exact rational backed by `i128`. Sufficient for graphs up to 50,000 vertices.
pub type Rational = num_rational::Ratio<i128>;
/// Arbitrary precision rational.
pub type BigRational = num_rational::Ratio<num_bigint::BigInt>;
/// Score breakdown with `i128` numerators.
pub type Score = ScoreBreakdown<i128>;
/// Score breakdown with arbitrary precision numerators.
pub type BigScore = ScoreBreakdown<num_bigint::BigInt>;
/// Modularity value and argmax with `i128` numerators.
pub type Modularity = ExactModularity<i128>;
