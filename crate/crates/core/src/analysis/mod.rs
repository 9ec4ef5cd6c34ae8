//! Exact, runnable forms of the counting bounds: Hamming-ball volumes, the
//! trade-off inequalities between measurement noise and reconstruction
//! error, an exhaustive verifier for correcting matrices, disjunctness
//! checks and greedy hypergraph matchings.

mod disjunct;
mod hypergraph;
mod lemmas;
mod verify;
mod volume;

pub use disjunct::{
    exhaustive_disjunct_pairs, find_disjunct_violation, find_disjunct_violation_exhaustive,
    is_disjunct, max_pairwise_intersection, DisjunctViolation,
};
pub use hypergraph::{
    check_matching_lemma, greedy_maximal_matching, is_maximal_matching, Hypergraph,
    MAX_CANDIDATE_EDGES,
};
pub use lemmas::{
    lemma1_chain_check, lemma1_check, lemma2_check, lemma2_outcome, lemma3_bound, BoundReport,
    BoundValue, Lemma2Outcome, Lemma3Report,
};
pub use verify::{verify_correcting, CorrectingReport, CorrectingWitness};
pub use volume::{
    close_ball_product_bounds, close_ball_volume, hamming_volume, log2_big, ProductBoundCheck,
};
