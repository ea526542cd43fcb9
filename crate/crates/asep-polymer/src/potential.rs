use asep_core::{CoreError, ModelParams};
use asep_motzkin::{HeightWeights, Mode, TransferTables};

/// Log step weight of the wall walk: `h` is the lower of the two endpoint
/// heights for a diagonal step (`y = ±1`) and the common height for a flat
/// step (`y = 0`).  Any step whose lower endpoint lies below the wall costs
/// `-inf`.
pub fn potential_v(h: i64, y: i32, p: &ModelParams) -> f64 {
    assert!((-1..=1).contains(&y), "step increment must be -1, 0, or +1");
    if h < 0 {
        return f64::NEG_INFINITY;
    }
    let qh = p.q.powi(i32::try_from(h).unwrap_or(i32::MAX));
    if y == 0 {
        (2.0 + (p.u + p.v) * qh).ln()
    } else {
        0.5 * ((1.0 - p.q * qh) * (1.0 - p.u * p.v * qh)).ln()
    }
}

fn wall_walk_weights(p: &ModelParams, cap: usize) -> HeightWeights {
    let mut up = Vec::with_capacity(cap + 1);
    let mut flat = Vec::with_capacity(cap + 1);
    for h in 0..=cap {
        flat.push(potential_v(h as i64, 0, p).exp());
        up.push(potential_v(h as i64, 1, p).exp());
    }
    HeightWeights { down: up.clone(), up, flat }
}

/// Transfer tables of the `exp(V)`-weighted wall walk over `n` steps.
/// `h_max` truncates the stored height range; passing `n` keeps every
/// reachable height, and in `Constraint` mode anything at or above `n / 2`
/// is already lossless.
pub fn build_transfer_tables(
    n: usize,
    p: &ModelParams,
    mode: Mode,
    h_max: usize,
) -> Result<TransferTables, CoreError> {
    if p.u * p.v >= 1.0 {
        return Err(CoreError::Validation {
            field: "u*v",
            message: format!(
                "the transfer measure needs the fan region u*v < 1; got u*v = {:.6}",
                p.u * p.v
            ),
        });
    }
    let cap = h_max.min(n.max(1));
    TransferTables::build(n, wall_walk_weights(p, cap), mode, cap)
}

/// `(1/n) * log Z` of the walk over `n` steps.
pub fn free_energy(n: usize, p: &ModelParams, mode: Mode) -> Result<f64, CoreError> {
    if n == 0 {
        return Err(CoreError::Validation {
            field: "n",
            message: "free energy needs at least one step".into(),
        });
    }
    let tables = build_transfer_tables(n, p, mode, n)?;
    Ok(tables.partition().ln_abs() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use asep_core::make_params;

    fn params_uv(n: usize, q: f64, u: f64, v: f64) -> ModelParams {
        make_params(n.max(1), q, (1.0 - q) / (1.0 + u), (1.0 - q) / (1.0 + v)).unwrap()
    }

    #[test]
    fn wall_is_infinitely_costly() {
        let p = params_uv(2, 0.4, 0.5, 0.5);
        for y in [-1, 0, 1] {
            assert_eq!(potential_v(-1, y, &p), f64::NEG_INFINITY);
            assert_eq!(potential_v(-7, y, &p), f64::NEG_INFINITY);
        }
    }

    #[test]
    fn flat_step_without_boundary_drive_costs_log_two() {
        let p = params_uv(2, 0.5, 0.0, 0.0);
        for h in [0, 1, 5, 40] {
            assert!((potential_v(h, 0, &p) - 2.0f64.ln()).abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal_steps_are_free_without_interaction() {
        let p = params_uv(2, 0.0, 0.0, 0.0);
        for h in [0, 1, 2, 9] {
            assert_eq!(potential_v(h, 1, &p), 0.0);
            assert_eq!(potential_v(h, -1, &p), 0.0);
        }
    }

    #[test]
    fn two_step_pinned_partitions() {
        // u = v = 0 at q = 0: flat-flat weighs 2*2, up-down weighs 1.
        let p = params_uv(2, 0.0, 0.0, 0.0);
        let t = build_transfer_tables(2, &p, Mode::Constraint, 2).unwrap();
        assert!((t.partition().value() - 5.0).abs() < 1e-12);
        // alpha = beta = 1 at q = 1/2 gives u = v = -1/2: flat-flat weighs 1,
        // up-down weighs (1/2)(3/4).
        let p = make_params(2, 0.5, 1.0, 1.0).unwrap();
        let t = build_transfer_tables(2, &p, Mode::Constraint, 2).unwrap();
        assert!((t.partition().value() - 11.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn empty_walk_has_unit_partition() {
        let p = params_uv(1, 0.3, 0.5, 0.2);
        for mode in [Mode::Constraint, Mode::Free] {
            let t = build_transfer_tables(0, &p, mode, 4).unwrap();
            assert_eq!(t.partition().value(), 1.0);
        }
    }

    #[test]
    fn shock_region_is_refused() {
        let p = params_uv(4, 0.5, 2.0, 1.0);
        let err = build_transfer_tables(4, &p, Mode::Constraint, 4).unwrap_err();
        assert!(matches!(err, CoreError::Validation { .. }));
        assert!(free_energy(4, &p, Mode::Free).is_err());
    }

    #[test]
    fn zero_height_cap_pins_the_walk_flat() {
        let p = params_uv(5, 0.6, 0.0, 0.0);
        let t = build_transfer_tables(5, &p, Mode::Constraint, 0).unwrap();
        assert!((t.partition().value() - 32.0).abs() < 1e-12);
    }

    #[test]
    fn single_step_free_energy() {
        let p = params_uv(1, 0.3, 0.0, 0.0);
        let f = free_energy(1, &p, Mode::Constraint).unwrap();
        assert!((f - 2.0f64.ln()).abs() < 1e-12);
        assert!(free_energy(0, &p, Mode::Constraint).is_err());
    }

    #[test]
    fn pinned_free_energy_counts_catalan_paths() {
        // Without interaction (q = 0, u = v = 0) the pinned partition counts
        // closed walks with two flat colors, so Z(100) is the 101st Catalan
        // number; accumulate it in floating point for the comparison.
        let p = params_uv(4, 0.0, 0.0, 0.0);
        let f = free_energy(100, &p, Mode::Constraint).unwrap();
        let mut catalan = 1.0f64;
        for k in 0..101usize {
            catalan *= 2.0 * (2.0 * k as f64 + 1.0) / (k as f64 + 2.0);
        }
        assert!((f - catalan.ln() / 100.0).abs() < 1e-12);
    }
}
