use asep_core::{CoreError, LogScaled, ModelParams};
use asep_motzkin::Mode;

use crate::potential::build_transfer_tables;

/// Exact law of `min(tau_m, n)`, where `tau_m` is the first position
/// `y >= 1` at which the walk sits at level `m`.  Entry `t` of the result is
/// the probability of the value `t`; entry 0 is always zero, and the final
/// entry also collects the paths that never touch the level.
pub fn return_time_distribution(
    p: &ModelParams,
    m: usize,
    n: usize,
    mode: Mode,
) -> Result<Vec<f64>, CoreError> {
    if n == 0 {
        return Err(CoreError::Validation {
            field: "n",
            message: "return-time law needs at least one step".into(),
        });
    }
    let tables = build_transfer_tables(n, p, mode, n)?;
    let z = tables.partition();
    let weights = tables.weights();

    let mut dist = vec![0.0; n + 1];
    // Mass of walk prefixes that have not yet touched level m, one entry per
    // height, rescaled each column with a running log offset.
    let mut alive = vec![1.0f64];
    let mut alive_log = 0.0f64;
    for t in 1..=n {
        let (bcol, blog) = tables.backward_column(t);
        let top = bcol.len() - 1;
        let mut next = vec![0.0; top + 1];
        for (h, &mass) in alive.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for cand in [h.wrapping_sub(1), h, h + 1] {
                if cand == usize::MAX || cand > top {
                    continue;
                }
                let w = weights.step(h, cand);
                if w != 0.0 {
                    next[cand] += mass * w;
                }
            }
        }
        if m <= top {
            let hit = LogScaled::from_mantissa_log(next[m] * bcol[m], alive_log + blog);
            dist[t] = hit.ratio_to(&z);
            next[m] = 0.0;
        }
        if t == n {
            let stranded: f64 = next.iter().zip(bcol).map(|(a, b)| a * b).sum();
            dist[n] += LogScaled::from_mantissa_log(stranded, alive_log + blog).ratio_to(&z);
        }
        let peak = next.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        if peak > 0.0 && peak.is_finite() {
            for x in &mut next {
                *x /= peak;
            }
            alive_log += peak.ln();
        }
        alive = next;
    }

    let total: f64 = dist.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(CoreError::Numerical {
            what: "return-time law",
            residual: (total - 1.0).abs(),
        });
    }
    for d in &mut dist {
        *d /= total;
    }
    Ok(dist)
}

/// `E[min(tau_m, n)^k]` under the endpoint-pinned measure, `k <= 4`.
pub fn return_time_moment(p: &ModelParams, m: usize, k: u32, n: usize) -> Result<f64, CoreError> {
    if k > 4 {
        return Err(CoreError::Validation {
            field: "k",
            message: format!("moment order is capped at 4; got {k}"),
        });
    }
    let dist = return_time_distribution(p, m, n, Mode::Constraint)?;
    Ok(dist
        .iter()
        .enumerate()
        .map(|(t, &pr)| (t as f64).powi(k as i32) * pr)
        .sum())
}

/// Law of the first return to the wall under the endpoint-pinned measure —
/// an `n`-truncated stand-in for the excursion-length law of the infinite
/// pinned walk.  Entry `t` is the probability of an excursion of length `t`.
pub fn excursion_law_estimate(p: &ModelParams, n: usize) -> Result<Vec<f64>, CoreError> {
    return_time_distribution(p, 0, n, Mode::Constraint)
}

/// Step law of the lazy reflected walk tilted by the harmonic function
/// `x + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LazyStepProbs {
    pub down: f64,
    pub stay: f64,
    pub up: f64,
}

pub fn h_transform_step_probs(x: u64) -> LazyStepProbs {
    let xf = x as f64;
    LazyStepProbs {
        down: xf / (4.0 * (xf + 1.0)),
        stay: 0.5,
        up: (xf + 2.0) / (4.0 * (xf + 1.0)),
    }
}
