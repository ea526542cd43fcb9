//! Brute-force ground truth for the open ASEP: the full `2^n`-state rate
//! matrix, its stationary distribution (dense LU for small systems, power
//! iteration on the uniformized chain beyond), and the exact stationary
//! current across a bond.  Every other representation in the workspace is
//! validated against this crate on small segments.

mod current;
mod generator;
mod stationary;

pub use current::{current_exact, current_limit};
pub use generator::{build_generator, GeneratorMatrix, MAX_EXACT_SITES};
pub use stationary::stationary_exact;
