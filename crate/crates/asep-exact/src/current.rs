use asep_core::{liggett_limit_density, ConfigDist, CoreError, ModelParams};

/// Net stationary flow across the bond `(i, i+1)`:
/// `P(particle at i, hole at i+1) - q * P(hole at i, particle at i+1)`.
/// Independent of `i` when `d` is stationary.
pub fn current_exact(d: &ConfigDist, p: &ModelParams, i: usize) -> Result<f64, CoreError> {
    if d.len() != p.n {
        return Err(CoreError::LengthMismatch { left: d.len(), right: p.n });
    }
    if i == 0 || i >= p.n {
        return Err(CoreError::InvalidInterval { a: i, b: i + 1, len: p.n });
    }
    let lo = 1usize << (i - 1);
    let hi = 1usize << i;
    let mut forward = 0.0;
    let mut backward = 0.0;
    for (m, w) in d.weights().iter().enumerate() {
        match (m & lo != 0, m & hi != 0) {
            (true, false) => forward += w,
            (false, true) => backward += w,
            _ => {}
        }
    }
    Ok(forward - p.q * backward)
}

/// Limit of the stationary current as the segment grows:
/// `(1-q) rho (1-rho)` with `rho` the limiting density, absent on the phase
/// boundaries where no limit density is singled out.
pub fn current_limit(p: &ModelParams) -> Option<f64> {
    liggett_limit_density(p).map(|rho| (1.0 - p.q) * rho * (1.0 - rho))
}
