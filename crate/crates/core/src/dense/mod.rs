//! Very dense random graphs, handled through their sparse complements.
//!
//! A graph `G` with `p = 1 - c/n` is sampled by drawing its complement `H`
//! at rate `c/n`. A balanced bipartition that cuts almost every edge of `H`
//! keeps almost every non-edge of `G` across the cut, which certifies a
//! modularity lower bound of order `1/n` on `G`. The bound is computed exactly
//! from the statistics of `H` without materialising `G`.

mod cparams;
mod experiment;
mod peel;
mod sampling;
mod split;

pub use cparams::{delta_of_c, x_of_c, CParams};
pub use experiment::{
    dense_bipartition_score, read_csv, summarize, transition_experiment, write_csv, GroupSummary, Model,
    SplitAudit, Spread, TransitionConfig, TransitionRecord, CSV_HEADER,
};
pub use peel::{two_core, CoreInfo};
pub use sampling::{sample_gnm, sample_gnm_complement, sample_gnp, sample_gnp_complement, RngSeed};
pub use split::{balanced_bipartition_sparse, split_forest, ForestSplit, Rho, SparseBipartition, SplitParams};
