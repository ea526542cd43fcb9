//! The combinatorial face of the stationary measure: configurations are
//! encoded by lattice paths with North/South diagonal steps and two colored
//! flat steps, weighted per step by height-dependent factors in `q`, `u`,
//! `v`.  Summing path weights per configuration reproduces the stationary
//! distribution of the generator exactly; contracting the sum as a transfer
//! product gives partition values and window marginals for chains far beyond
//! direct enumeration.
//!
//! The transfer machinery ([`TransferTables`]) is shared with the polymer
//! crate, which reuses it with its own step weights.

mod basic;
mod partition;
mod project;
mod steps;
mod transfer;
mod weights;

pub use basic::{basic_weight, stationary_via_paths, verify_basic_relations, MAX_PATH_SITES};
pub use partition::{bicolored_path_count, catalan_number, partition_function, path_weight_sum};
pub use project::projected_stationary_transfer;
pub use steps::{step_weight, total_weight, Step, StepSequence};
pub use transfer::{HeightWeights, Mode, TransferTables};
pub use weights::{finite_representation_order, ColoredWeights};
