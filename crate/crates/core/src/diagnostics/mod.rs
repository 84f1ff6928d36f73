//! Rank-error diagnostics: violation/reversal sets, code-tree censuses and
//! cumulative logarithmic error of approximate constructions.

mod boundaries;
mod census;
mod cle;

pub use boundaries::{classify_llr_mean, solve_set_boundaries, MeanClass, SetBoundaries};
pub use census::{census, census_levels, SetCensus};
pub use cle::{
    bec_polarize, cle_injection_bound, cle_injection_exact, cle_profile, cle_sample, leaf_error_bound, leaf_log_errors,
    pcle_bound, pcle_exact, cle_injections, CleSample, ExactTree, Injection, LeafError,
};
