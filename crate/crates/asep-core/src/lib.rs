//! Shared domain types for the open ASEP toolkit: model parameters and phase
//! labels, exact finitely-supported distributions over particle configurations,
//! total variation distance, interval projection, Bernoulli products, and the
//! log-scaled scalar used to carry partition-function magnitudes.
//!
//! The model throughout is the exclusion process on sites `1..=n` where a
//! particle hops right at rate 1 and left at rate `q`, enters at site 1 at
//! rate `alpha` and exits at site `n` at rate `beta`.  All higher
//! representations (path ensembles, matrix products, shock mixtures, growth
//! models) live in sibling crates and speak in these types.

mod dist;
mod error;
mod params;
mod qfunc;
mod rng;
mod scaled;

pub use dist::{
    bernoulli_product, bernoulli_profile, config_string, parse_config, project, tv_distance,
    ConfigDist, MAX_DENSE_SITES,
};
pub use error::CoreError;
pub use params::{
    classify_phase, liggett_limit_density, make_params, wasep_params, DensityPhase, ModelParams,
    Phase, Region, WasepSpec, PHASE_TOL,
};
pub use qfunc::q_pochhammer;
pub use rng::stream_rng;
pub use scaled::LogScaled;
