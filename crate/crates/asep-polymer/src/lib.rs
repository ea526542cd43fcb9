//! Pinned and free wall-walk measures driven by the height potential of the
//! open exclusion chain: exact transfer tables, exact path sampling, height
//! marginals and level-hitting events, return-time laws, and free energy.
//!
//! The walk takes steps in `{-1, 0, +1}` above a hard wall at zero and pays
//! `exp(V)` per step; `Constraint` mode pins the endpoint back to zero.  The
//! tables reuse the machinery in `asep-motzkin`, which ties the pinned
//! partition value back to the particle-system normalization.

mod potential;
mod returns;
mod sample;

pub use asep_motzkin::{Mode, TransferTables};
pub use potential::{build_transfer_tables, free_energy, potential_v};
pub use returns::{
    excursion_law_estimate, h_transform_step_probs, return_time_distribution, return_time_moment,
    LazyStepProbs,
};
pub use sample::{event_prob_a, height_marginal, sample_path, PolymerSample};
