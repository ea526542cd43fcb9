use asep_core::{ConfigDist, CoreError, ModelParams};

use crate::weights::ColoredWeights;

/// Paths are only enumerated exactly up to this many sites.
pub const MAX_PATH_SITES: usize = 20;

const MAX_RELATION_SITES: usize = 12;

/// Sum of path weights over the paths encoding one configuration, computed
/// by a height DP with the branch at each site forced by the occupancy
/// (particle: North or filled East; hole: South or empty East).
fn config_path_sum(config: usize, len: usize, w: &ColoredWeights) -> f64 {
    let mut col = vec![0.0; len / 2 + 2];
    let mut top = 0usize;
    col[0] = 1.0;
    for i in 0..len {
        let remaining = len - i - 1;
        let new_top = (i + 1).min(remaining).min(w.cap());
        let mut next = vec![0.0; new_top + 1];
        if config >> i & 1 == 1 {
            for h in 0..=top {
                if col[h] == 0.0 {
                    continue;
                }
                if h + 1 <= new_top {
                    next[h + 1] += col[h] * w.up[h];
                }
                if h <= new_top {
                    next[h] += col[h] * w.flat_occ[h];
                }
            }
        } else {
            for h in 0..=top {
                if col[h] == 0.0 {
                    continue;
                }
                if h > 0 && h - 1 <= new_top {
                    next[h - 1] += col[h] * w.down[h - 1];
                }
                if h <= new_top {
                    next[h] += col[h] * w.flat_emp[h];
                }
            }
        }
        col = next;
        top = new_top;
    }
    col[0]
}

/// The basic weight of a configuration: the path sum over its encoding
/// paths, scaled by `(1-q)^(-2 len)` so that the weight of the empty
/// configuration is 1 and the boundary recursions hold across lengths.
pub fn basic_weight(config: usize, len: usize, p: &ModelParams) -> Result<f64, CoreError> {
    if len > MAX_PATH_SITES {
        return Err(CoreError::Capacity { what: "path enumeration", limit: MAX_PATH_SITES, got: len });
    }
    if config >= 1usize << len {
        return Err(CoreError::Validation {
            field: "config",
            message: format!("mask {config} does not fit in {len} sites"),
        });
    }
    if len == 0 {
        return Ok(1.0);
    }
    let w = ColoredWeights::new(p, len / 2 + 1);
    let raw = config_path_sum(config, len, &w);
    Ok(raw * (1.0 - p.q).powi(-2 * len as i32))
}

/// Stationary distribution as normalized basic weights.
pub fn stationary_via_paths(p: &ModelParams) -> Result<ConfigDist, CoreError> {
    if p.n > MAX_PATH_SITES {
        return Err(CoreError::Capacity { what: "path enumeration", limit: MAX_PATH_SITES, got: p.n });
    }
    let w = ColoredWeights::new(p, p.n / 2 + 1);
    let weights: Vec<f64> = (0..1usize << p.n)
        .map(|config| config_path_sum(config, p.n, &w))
        .collect();
    ConfigDist::normalized_from_weights(p.n, weights)
}

/// Exhaustively checks the defining recursions of the basic weight function
/// up to total length `n`: the empty weight is 1, prepending a hole divides
/// by `alpha`, appending a particle divides by `beta`, and the bulk relation
/// `B(eta 0 zeta) + B(eta 1 zeta) = B(eta 1 0 zeta) - q B(eta 0 1 zeta)`
/// holds for all splits.  Returns the largest relative residual.
pub fn verify_basic_relations(p: &ModelParams, n: usize) -> Result<f64, CoreError> {
    if n > MAX_RELATION_SITES {
        return Err(CoreError::Capacity {
            what: "relation check",
            limit: MAX_RELATION_SITES,
            got: n,
        });
    }
    let rel = |lhs: f64, rhs: f64| (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0);
    let mut worst = (basic_weight(0, 0, p)? - 1.0).abs();

    for len in 0..n {
        for eta in 0..1usize << len {
            let b = basic_weight(eta, len, p)?;
            // [0, eta]: hole prepended at site 1 shifts eta up one site.
            let prepended = basic_weight(eta << 1, len + 1, p)?;
            worst = worst.max(rel(b, p.alpha * prepended));
            // [eta, 1]: particle appended at the last site.
            let appended = basic_weight(eta | 1 << len, len + 1, p)?;
            worst = worst.max(rel(b, p.beta * appended));
        }
    }

    for total in 0..=n.saturating_sub(2) {
        for a in 0..=total {
            let b_len = total - a;
            for eta in 0..1usize << a {
                for zeta in 0..1usize << b_len {
                    let short = |mid: usize| eta | mid << a | zeta << (a + 1);
                    let long = |mid: usize| eta | mid << a | zeta << (a + 2);
                    let lhs = basic_weight(short(0), total + 1, p)?
                        + basic_weight(short(1), total + 1, p)?;
                    let rhs = basic_weight(long(0b01), total + 2, p)?
                        - p.q * basic_weight(long(0b10), total + 2, p)?;
                    worst = worst.max(rel(lhs, rhs));
                }
            }
        }
    }
    Ok(worst)
}
