//! Checks that do not go through the canonical-form construction: a direct
//! search for a conjugator between two pairs, and exact rational
//! classification for matrices on the `|tr| = 2` boundary.

mod exact;
mod search;

pub use exact::{exact_classify, ratio, ExactMatrix};
pub use search::{
    conjugation_residual, search_conjugator, ConjugatorSearchReport, CONVERGENCE_THRESHOLD, START_COUNT,
};
