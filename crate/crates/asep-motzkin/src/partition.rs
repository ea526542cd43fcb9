use asep_core::{CoreError, LogScaled, ModelParams};
use num_bigint::BigUint;

use crate::transfer::{Mode, TransferTables};
use crate::weights::ColoredWeights;

/// Raw total weight of all closed paths of length `n` (colors summed),
/// contracted in O(n^2) with per-column rescaling.
pub fn path_weight_sum(n: usize, p: &ModelParams) -> Result<LogScaled, CoreError> {
    let cap = n / 2;
    let w = ColoredWeights::new(p, cap).summed();
    let tables = TransferTables::build(n, w, Mode::Constraint, cap)?;
    Ok(tables.partition())
}

/// The partition value normalizing basic weights into the stationary
/// measure: the raw path sum scaled by `(1-q)^(-2n)`.  Successive ratios
/// give the stationary current.
pub fn partition_function(n: usize, p: &ModelParams) -> Result<LogScaled, CoreError> {
    let raw = path_weight_sum(n, p)?;
    let shift = -2.0 * n as f64 * (1.0 - p.q).ln();
    Ok(LogScaled::from_mantissa_log(raw.mantissa, raw.log_scale + shift))
}

/// The `n`th Catalan number, exactly.
pub fn catalan_number(n: usize) -> BigUint {
    let mut c = BigUint::from(1u32);
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

/// Exact integer count of closed bi-colored paths of length `n` (all step
/// weights 1, two flat colors), by big-integer DP.  Equals the path weight
/// sum at `q = 0`, `u = v = 0`, where every step weight is 1.
pub fn bicolored_path_count(n: usize) -> BigUint {
    let mut col = vec![BigUint::from(1u32)];
    for i in 0..n {
        let top = (i + 1).min(n - i - 1);
        let mut next = vec![BigUint::ZERO; top + 1];
        for (h, x) in col.iter().enumerate() {
            if h <= top {
                next[h] += 2u32 * x;
            }
            if h + 1 <= top {
                next[h + 1] += x;
            }
            if h > 0 && h - 1 <= top {
                next[h - 1] += x;
            }
        }
        col = next;
    }
    col.swap_remove(0)
}
