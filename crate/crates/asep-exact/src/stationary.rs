use asep_core::{ConfigDist, CoreError, ModelParams};
use nalgebra::{DMatrix, DVector};

use crate::generator::{build_generator, GeneratorMatrix};

/// Above this length the dense LU solve gives way to power iteration.
const MAX_DENSE_SOLVE_SITES: usize = 14;

/// The stationary residual every returned distribution is certified against.
const RESIDUAL_TOL: f64 = 1e-12;

const MAX_POWER_ITERS: usize = 300_000;

/// The unique stationary distribution of the process, certified to satisfy
/// `max |(pi L)(s)| <= 1e-12`.  Dense LU with one balance row replaced by the
/// normalization row up to 14 sites; power iteration on the uniformized
/// chain beyond.
pub fn stationary_exact(p: &ModelParams) -> Result<ConfigDist, CoreError> {
    let g = build_generator(p)?;
    let pi = if p.n <= MAX_DENSE_SOLVE_SITES {
        solve_dense(&g)?
    } else {
        solve_power(&g, p)?
    };
    let mut residual = vec![0.0; g.num_states()];
    g.apply_left(&pi, &mut residual);
    let worst = residual.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    if worst > RESIDUAL_TOL {
        return Err(CoreError::Numerical { what: "stationary solve", residual: worst });
    }
    ConfigDist::normalized_from_weights(p.n, pi)
}

fn solve_dense(g: &GeneratorMatrix) -> Result<Vec<f64>, CoreError> {
    let states = g.num_states();
    let mut a = DMatrix::<f64>::zeros(states, states);
    for s in 0..states {
        let mut exit = 0.0;
        for (t, r) in g.transitions(s) {
            a[(t, s)] += r;
            exit += r;
        }
        a[(s, s)] -= exit;
    }
    // The balance system pi L = 0 is rank-deficient by one; overwrite the
    // first equation with the normalization constraint sum pi = 1.
    for j in 0..states {
        a[(0, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(states);
    b[0] = 1.0;
    let solution = a
        .lu()
        .solve(&b)
        .ok_or(CoreError::Numerical { what: "stationary solve", residual: f64::INFINITY })?;
    Ok(solution.iter().copied().collect())
}

fn solve_power(g: &GeneratorMatrix, p: &ModelParams) -> Result<Vec<f64>, CoreError> {
    let states = g.num_states();
    let lambda = uniformization_rate(p);
    let mut pi = vec![1.0 / states as f64; states];
    let mut step = vec![0.0; states];
    let mut worst = f64::INFINITY;
    for iter in 0..MAX_POWER_ITERS {
        g.apply_left(&pi, &mut step);
        worst = step.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        if worst <= RESIDUAL_TOL {
            return Ok(pi);
        }
        for (x, dx) in pi.iter_mut().zip(&step) {
            *x += dx / lambda;
        }
        if iter % 512 == 511 {
            let total: f64 = pi.iter().sum();
            for x in &mut pi {
                *x /= total;
            }
        }
    }
    Err(CoreError::Numerical { what: "stationary power iteration", residual: worst })
}

fn uniformization_rate(p: &ModelParams) -> f64 {
    if p.q == 0.0 && p.alpha <= 1.0 && p.beta <= 1.0 {
        (p.n + 1) as f64
    } else {
        p.alpha + p.beta + p.n as f64 * (1.0 + p.q)
    }
}
