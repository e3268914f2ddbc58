//! Minimum edge edits to positive modularity.
//!
//! [`search`] finds exact distances by brute force on small graphs,
//! [`predict`] gives the closed-form values for complete and complete
//! bipartite graphs, and [`construct`] builds explicit one-edit (or, for
//! `K_n`, `floor(n/2)+1`-edit) witnesses with exactly computed scores.

pub mod construct;
pub mod predict;
pub mod search;

pub use construct::{
    bipartite_addition_witness, bipartite_removal_witness, diophantine_pair, kn_minus_witness,
    multipartite_removal_witness, BipartiteSplit, DiophantinePair, Witness,
};
pub use predict::{predicted_delta_complete, predicted_deltas_bipartite, Delta, DeltaTriple};
pub use search::{
    edit_distance_to_positive, edit_distance_with, EditCertificate, EditMode, EditSearchResult,
    SearchOptions,
};
