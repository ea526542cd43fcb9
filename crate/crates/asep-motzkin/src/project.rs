use asep_core::{ConfigDist, CoreError, ModelParams};

use crate::transfer::{Mode, TransferTables};
use crate::weights::{finite_representation_order, ColoredWeights};

const MAX_PATTERN_SITES: usize = 20;

/// Exact marginal of the stationary measure on the window `interval` of a
/// chain of length `p.n`, by transfer contraction: every site outside the
/// window is summed over both colors and both diagonal directions, while the
/// `2^|I|` occupancy patterns inside the window each force their branch.
///
/// `h_max` must either admit every reachable height (`h_max >= n/2`) or be
/// at least the finite-representation order `k` where `u v q^k = 1`, above
/// which all path weights provably vanish.  In the shock region the
/// contraction runs over signed weights; the resulting pattern masses are
/// nonnegative up to round-off.
pub fn projected_stationary_transfer(
    p: &ModelParams,
    interval: (usize, usize),
    h_max: usize,
) -> Result<ConfigDist, CoreError> {
    let (a, b) = interval;
    let n = p.n;
    if a == 0 || a > b || b > n {
        return Err(CoreError::InvalidInterval { a, b, len: n });
    }
    let width = b - a + 1;
    if width > MAX_PATTERN_SITES {
        return Err(CoreError::Capacity { what: "window width", limit: MAX_PATTERN_SITES, got: width });
    }
    let cap = if h_max >= n / 2 {
        n / 2
    } else {
        match finite_representation_order(p, 1e-9) {
            Some(k) if k <= h_max => k,
            _ => {
                return Err(CoreError::Validation {
                    field: "h_max",
                    message: format!(
                        "cap {h_max} below the reachable height {} and no finite representation \
                         order proves the excess weights vanish",
                        n / 2
                    ),
                })
            }
        }
    };

    let colored = ColoredWeights::new(p, cap);
    let tables = TransferTables::build(n, colored.summed(), Mode::Constraint, cap)?;
    let col_top = |i: usize| i.min(n - i).min(cap);

    let (start, _) = tables.forward_column(a - 1);
    let (end, _) = tables.backward_column(b);
    let mut weights = Vec::with_capacity(1usize << width);
    let mut logs = Vec::with_capacity(1usize << width);
    for pattern in 0..1usize << width {
        let mut col = start.to_vec();
        let mut log_offset = 0.0;
        for pos in a..=b {
            let top = col_top(pos);
            let mut next = vec![0.0; top + 1];
            if pattern >> (pos - a) & 1 == 1 {
                for (h, x) in col.iter().enumerate() {
                    if h + 1 <= top {
                        next[h + 1] += x * colored.up[h];
                    }
                    if h <= top {
                        next[h] += x * colored.flat_occ[h];
                    }
                }
            } else {
                for (h, x) in col.iter().enumerate() {
                    if h > 0 && h - 1 <= top {
                        next[h - 1] += x * colored.down[h - 1];
                    }
                    if h <= top {
                        next[h] += x * colored.flat_emp[h];
                    }
                }
            }
            let max = next.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if max > 0.0 {
                for x in &mut next {
                    *x /= max;
                }
                log_offset += max.ln();
            }
            col = next;
        }
        let dot: f64 = col.iter().zip(end).map(|(x, y)| x * y).sum();
        weights.push(dot);
        logs.push(if dot == 0.0 { f64::NEG_INFINITY } else { log_offset });
    }

    // Shared forward/backward offsets cancel in the normalization; only the
    // per-pattern offsets differ.  Shift by the largest before exponentiating.
    let max_log = logs
        .iter()
        .zip(&weights)
        .filter(|(_, w)| **w != 0.0)
        .map(|(l, _)| *l)
        .fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = weights
        .iter()
        .zip(&logs)
        .map(|(w, l)| if *w == 0.0 { 0.0 } else { w * (l - max_log).exp() })
        .collect();
    ConfigDist::normalized_from_weights(width, scaled).map_err(|e| match e {
        CoreError::SignedMass { total, min_entry } => CoreError::Validation {
            field: "projected weights",
            message: format!(
                "signed path weights in the shock region failed to cancel: total {total:e}, \
                 minimum pattern mass {min_entry:e}"
            ),
        },
        other => other,
    })
}
