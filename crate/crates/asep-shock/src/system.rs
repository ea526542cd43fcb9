use asep_core::{CoreError, ModelParams};

/// Deviation allowed in the finite-representation constraint `u*v*q^k = 1`.
pub const FINITE_REP_TOL: f64 = 1e-10;

/// The density ladder of a `k`-shock system: bulk densities `rho[0..=k]`
/// linked by the fugacity recursion, the density carried by a shock site
/// itself, per-density currents, and the current ratios that bias the dual
/// shock-location chain.
#[derive(Debug, Clone)]
pub struct ShockSystem {
    pub k: usize,
    /// Bulk densities, strictly increasing from `1/(1+u)` to `v/(1+v)`.
    pub rho: Vec<f64>,
    /// Density at a shock site: 1 in the low-density phase, 0 in the
    /// high-density phase (ties resolve to 1).
    pub rho_star: f64,
    /// Currents `(1-q) * rho * (1-rho)`, one per bulk density.
    pub j: Vec<f64>,
    /// Current ratios; `d[i]` multiplies per unit displacement of the
    /// `(i+1)`-th shock, `d[i] = j[i+1] / j[i]`.
    pub d: Vec<f64>,
}

/// Builds the density ladder for `k` shocks by running the odds recursion
/// `rho_i/(1-rho_i) = q^{-1} * rho_{i-1}/(1-rho_{i-1})` up from
/// `rho_0 = 1/(1+u)`, and checks that it lands on `v/(1+v)`.
pub fn bulk_densities(p: &ModelParams, k: usize) -> Result<ShockSystem, CoreError> {
    let gap = (p.u * p.v * p.q.powi(k as i32) - 1.0).abs();
    if gap > FINITE_REP_TOL {
        return Err(CoreError::Numerical {
            what: "finite representation constraint u*v*q^k = 1",
            residual: gap,
        });
    }
    let mut rho = Vec::with_capacity(k + 1);
    let mut odds = 1.0 / p.u;
    rho.push(odds / (1.0 + odds));
    for _ in 0..k {
        odds /= p.q;
        rho.push(odds / (1.0 + odds));
    }
    let endpoint = (rho[k] - p.v / (1.0 + p.v)).abs();
    if endpoint > FINITE_REP_TOL {
        return Err(CoreError::Numerical {
            what: "density ladder endpoint v/(1+v)",
            residual: endpoint,
        });
    }
    let j: Vec<f64> = rho.iter().map(|&r| (1.0 - p.q) * r * (1.0 - r)).collect();
    let d: Vec<f64> = (0..k).map(|i| j[i + 1] / j[i]).collect();
    let rho_star = if p.u >= p.v { 1.0 } else { 0.0 };
    Ok(ShockSystem { k, rho, rho_star, j, d })
}

/// Jump rates of the `i`-th dual shock particle (1-based): right rate
/// `j_i / (rho_i - rho_{i-1})`, left rate `j_{i-1} / (rho_i - rho_{i-1})`.
/// Their ratio is the bias `d_i`.
pub fn dual_jump_rates(s: &ShockSystem, i: usize) -> Result<(f64, f64), CoreError> {
    if i == 0 || i > s.k {
        return Err(CoreError::Validation {
            field: "i",
            message: format!("shock particle index must lie in 1..={}; got {i}", s.k),
        });
    }
    let gap = s.rho[i] - s.rho[i - 1];
    if gap <= 1e-14 {
        return Err(CoreError::Numerical { what: "shock density gap", residual: gap });
    }
    Ok((s.j[i] / gap, s.j[i - 1] / gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use asep_core::make_params;

    pub(crate) fn params_uv(n: usize, q: f64, u: f64, v: f64) -> ModelParams {
        make_params(n, q, (1.0 - q) / (1.0 + u), (1.0 - q) / (1.0 + v)).unwrap()
    }

    #[test]
    fn one_shock_ladder() {
        let s = bulk_densities(&params_uv(4, 0.5, 2.0, 1.0), 1).unwrap();
        assert!((s.rho[0] - 1.0 / 3.0).abs() < 1e-14);
        assert!((s.rho[1] - 0.5).abs() < 1e-14);
        assert!((s.j[0] - 1.0 / 9.0).abs() < 1e-14);
        assert!((s.j[1] - 1.0 / 8.0).abs() < 1e-14);
        assert!((s.d[0] - 9.0 / 8.0).abs() < 1e-14);
        assert_eq!(s.rho_star, 1.0);
    }

    #[test]
    fn product_line_ladder_is_a_single_density() {
        let s = bulk_densities(&params_uv(4, 0.3, 1.0, 1.0), 0).unwrap();
        assert_eq!(s.rho, vec![0.5]);
        assert!(s.d.is_empty());
    }

    #[test]
    fn two_shock_ladder() {
        let s = bulk_densities(&params_uv(4, 0.5, 4.0, 1.0), 2).unwrap();
        let want = [0.2, 1.0 / 3.0, 0.5];
        for (a, b) in s.rho.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!((s.d[0] - 25.0 / 18.0).abs() < 1e-13);
        assert!((s.d[1] - 9.0 / 8.0).abs() < 1e-13);
    }

    #[test]
    fn high_density_ladder_flips_the_shock_density() {
        let s = bulk_densities(&params_uv(4, 0.5, 1.0, 2.0), 1).unwrap();
        assert_eq!(s.rho_star, 0.0);
        assert!((s.rho[0] - 0.5).abs() < 1e-14);
        assert!((s.rho[1] - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn broken_constraint_reports_the_deviation() {
        let err = bulk_densities(&params_uv(4, 0.6, 2.0, 1.0), 1).unwrap_err();
        match err {
            CoreError::Numerical { residual, .. } => assert!((residual - 0.2).abs() < 1e-12),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn dual_rates_worked_example() {
        let s = bulk_densities(&params_uv(4, 0.5, 2.0, 1.0), 1).unwrap();
        let (right, left) = dual_jump_rates(&s, 1).unwrap();
        assert!((right - 0.75).abs() < 1e-14);
        assert!((left - 2.0 / 3.0).abs() < 1e-14);
        assert!((right / left - s.d[0]).abs() < 1e-14);
        assert!(dual_jump_rates(&s, 0).is_err());
        assert!(dual_jump_rates(&s, 2).is_err());
    }
}
